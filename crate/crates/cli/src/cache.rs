//! On-disk cache of multiplication tables. Purely an optimization: every
//! entry carries a format version and a SHA-256 checksum, and anything that
//! fails validation is rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use suzuki_hopf::algebra::build_structure_tables;
use suzuki_hopf::{AlgebraParams, CycNumber, Element, StructureTables};

pub const FORMAT_VERSION: u32 = 1;

/// Sparse products: one list of `(basis position, coefficient text)` per
/// basis pair, row-major.
type Products = Vec<Vec<(usize, String)>>;

#[derive(Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    params: AlgebraParams,
    checksum: String,
    products: Products,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// An entry existed but failed validation and was replaced.
    Rebuilt,
}

fn checksum(products: &Products) -> String {
    let text = serde_json::to_string(products).expect("plain data serializes");
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn file_name(p: &AlgebraParams) -> String {
    let sign = |s: suzuki_hopf::Sign| if s.is_minus() { "m" } else { "p" };
    format!(
        "tables-v{FORMAT_VERSION}-N{}-n{}-mu{}-lambda{}.json",
        p.big_n,
        p.n,
        sign(p.mu),
        sign(p.lambda)
    )
}

fn encode(tables: &StructureTables) -> Products {
    let p = tables.params();
    tables
        .products()
        .iter()
        .map(|x| {
            x.terms()
                .map(|(b, c)| (p.index_of(*b).expect("basis label"), c.to_text()))
                .collect()
        })
        .collect()
}

fn decode(params: AlgebraParams, products: &Products) -> Result<StructureTables> {
    let ctx = params.field();
    let dim = params.dim();
    let mut mult = Vec::with_capacity(products.len());
    for row in products {
        let mut terms = Vec::with_capacity(row.len());
        for (i, text) in row {
            if *i >= dim {
                return Err(anyhow!("basis position {i} out of range"));
            }
            terms.push((params.basis_at(*i), CycNumber::parse(&ctx, text)?));
        }
        mult.push(Element::from_terms(terms));
    }
    Ok(StructureTables::from_parts(params, mult)?)
}

fn load(path: &Path, params: AlgebraParams) -> Result<StructureTables> {
    let text = fs::read_to_string(path)?;
    let entry: Entry = serde_json::from_str(&text)?;
    if entry.format_version != FORMAT_VERSION {
        return Err(anyhow!("format version {}", entry.format_version));
    }
    if entry.params != params {
        return Err(anyhow!("entry is for {}", entry.params));
    }
    if checksum(&entry.products) != entry.checksum {
        return Err(anyhow!("checksum mismatch"));
    }
    decode(params, &entry.products)
}

fn store(path: &Path, tables: &StructureTables) -> Result<()> {
    let products = encode(tables);
    let entry = Entry {
        format_version: FORMAT_VERSION,
        params: *tables.params(),
        checksum: checksum(&products),
        products,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    // write then rename so readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string(&entry)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Tables for `params`, read from `dir` when a valid entry exists.
pub fn tables(params: AlgebraParams, dir: Option<&Path>) -> (StructureTables, CacheStatus) {
    let Some(dir) = dir else {
        return (build_structure_tables(&params), CacheStatus::Disabled);
    };
    let path: PathBuf = dir.join(file_name(&params));
    let existed = path.exists();
    if existed {
        match load(&path, params) {
            Ok(t) => return (t, CacheStatus::Hit),
            Err(e) => eprintln!("warning: ignoring cache entry {}: {e}", path.display()),
        }
    }
    let t = build_structure_tables(&params);
    if let Err(e) = store(&path, &t) {
        eprintln!("warning: could not write cache entry {}: {e}", path.display());
    }
    (t, if existed { CacheStatus::Rebuilt } else { CacheStatus::Miss })
}
