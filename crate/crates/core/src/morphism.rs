//! Linear endomorphisms of the algebra, Hopf-morphism verification, and the
//! twist of comodules along an automorphism.

use serde::Serialize;

use crate::algebra::{Element, Generator, StructureTables, Word};
use crate::coalgebra::{all_subcoalgebras, Comodule, Subspace};
use crate::error::{Error, Result};
use crate::field::CycNumber;
use crate::hopf::{Counterexample, HopfTables, TensorElement, Verdict};
use crate::linalg::{invert, rank, Matrix};
use crate::parallel::Exec;

/// A linear map stored by columns: `columns[j]` is the image of basis
/// element `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    columns: Vec<Element>,
}

impl LinearMap {
    pub fn from_columns(columns: Vec<Element>) -> LinearMap {
        LinearMap { columns }
    }

    pub fn identity(tables: &StructureTables) -> LinearMap {
        LinearMap {
            columns: (0..tables.dim()).map(|i| tables.basis_element(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Element] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Element {
        &self.columns[j]
    }

    pub fn apply(&self, tables: &StructureTables, x: &Element) -> Element {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            out.add_scaled(&self.columns[tables.index_of(*b)], c);
        }
        out
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap, tables: &StructureTables) -> LinearMap {
        LinearMap {
            columns: inner.columns.iter().map(|c| self.apply(tables, c)).collect(),
        }
    }

    /// Dense matrix, rows indexed by target basis and columns by source.
    pub fn to_matrix(&self, tables: &StructureTables) -> Matrix {
        let dim = tables.dim();
        let mut m = vec![vec![CycNumber::zero(tables.ctx()); dim]; dim];
        for (j, col) in self.columns.iter().enumerate() {
            for (b, c) in col.terms() {
                m[tables.index_of(*b)][j] = c.clone();
            }
        }
        m
    }

    pub fn from_matrix(m: &Matrix, tables: &StructureTables) -> LinearMap {
        let dim = tables.dim();
        let basis = tables.basis();
        LinearMap {
            columns: (0..dim)
                .map(|j| {
                    Element::from_terms(
                        (0..dim)
                            .filter(|&i| !m[i][j].is_zero())
                            .map(|i| (basis[i], m[i][j].clone())),
                    )
                })
                .collect(),
        }
    }

    pub fn rank(&self, tables: &StructureTables) -> usize {
        rank(self.to_matrix(tables))
    }

    pub fn inverse(&self, tables: &StructureTables) -> Result<LinearMap> {
        Ok(LinearMap::from_matrix(&invert(&self.to_matrix(tables))?, tables))
    }

    pub fn is_identity(&self, tables: &StructureTables) -> bool {
        *self == LinearMap::identity(tables)
    }

    /// A canonical text form, used to sort maps deterministically.
    pub fn canonical_key(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.to_text())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// The defining relations, each as a pair of words with a scalar:
/// `lhs = scale · rhs`, where an empty right side means `0` and `None` for the
/// left side stands for the unit relation.
fn relation_list(tables: &StructureTables) -> Vec<(String, Vec<(Word, CycNumber)>, Vec<(Word, CycNumber)>)> {
    use Generator::*;
    let p = tables.params();
    let one = tables.one();
    let lambda = tables.num(p.lambda.as_i64());
    let mu = tables.num(p.mu.as_i64());
    let w = |gs: &[Generator]| Word(gs.to_vec());
    let mut out = vec![
        (
            "x11^2 = x22^2".to_string(),
            vec![(w(&[X11, X11]), one.clone())],
            vec![(w(&[X22, X22]), one.clone())],
        ),
        (
            "x12^2 = x21^2".to_string(),
            vec![(w(&[X12, X12]), one.clone())],
            vec![(w(&[X21, X21]), one.clone())],
        ),
        (
            "chi21^n = lambda chi12^n".to_string(),
            vec![(Word::chi(X21, p.n), one.clone())],
            vec![(Word::chi(X12, p.n), lambda)],
        ),
        (
            "chi11^n = chi22^n".to_string(),
            vec![(Word::chi(X11, p.n), one.clone())],
            vec![(Word::chi(X22, p.n), one.clone())],
        ),
        (
            "x11^2N + mu x12^2N = 1".to_string(),
            vec![
                (Word::power(X11, 2 * p.big_n), one.clone()),
                (Word::power(X12, 2 * p.big_n), mu),
            ],
            vec![(Word::default(), one.clone())],
        ),
    ];
    for a in Generator::ALL {
        for b in Generator::ALL {
            if a.parity() != b.parity() {
                out.push((format!("{a}{b} = 0"), vec![(w(&[a, b]), one.clone())], Vec::new()));
            }
        }
    }
    out
}

/// Names of the defining relations not preserved by the given generator
/// images (indexed as [`Generator::ALL`]).
pub fn relation_violations(images: &[Element; 4], tables: &StructureTables) -> Vec<String> {
    let image = |g: Generator| images[g as usize].clone();
    let eval = |side: &[(Word, CycNumber)]| {
        let mut acc = Element::zero();
        for (word, c) in side {
            acc.add_scaled(&tables.evaluate_word(word, &image), c);
        }
        acc
    };
    relation_list(tables)
        .into_iter()
        .filter(|(_, lhs, rhs)| eval(lhs) != eval(rhs))
        .map(|(name, _, _)| name)
        .collect()
}

/// A map defined on generators, with its well-definedness verdict.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratedMap {
    pub map: LinearMap,
    pub well_defined: bool,
    pub violated_relations: Vec<String>,
}

/// Extends generator images along each basis word, and checks the defining
/// relations on the images.
pub fn from_generator_images(images: &[Element; 4], tables: &StructureTables) -> GeneratedMap {
    let image = |g: Generator| images[g as usize].clone();
    let columns = tables
        .basis()
        .iter()
        .map(|b| tables.evaluate_word(&b.word(), &image))
        .collect();
    let violated_relations = relation_violations(images, tables);
    GeneratedMap {
        map: LinearMap { columns },
        well_defined: violated_relations.is_empty(),
        violated_relations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub is_algebra_map: Verdict,
    pub is_coalgebra_map: Verdict,
    pub commutes_with_antipode: Verdict,
    pub is_bijective: Verdict,
    pub is_unital: Verdict,
    pub is_counital: Verdict,
}

impl MorphismReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("is_algebra_map", &self.is_algebra_map),
            ("is_coalgebra_map", &self.is_coalgebra_map),
            ("commutes_with_antipode", &self.commutes_with_antipode),
            ("is_bijective", &self.is_bijective),
            ("is_unital", &self.is_unital),
            ("is_counital", &self.is_counital),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.holds)
    }

    /// The first failing verdict with its counterexample, in the fixed order.
    pub fn first_failure(&self) -> Option<(&'static str, &Verdict)> {
        self.verdicts().into_iter().find(|(_, v)| !v.holds)
    }
}

pub fn verify_hopf_morphism(f: &LinearMap, tables: &StructureTables, hopf: &HopfTables) -> MorphismReport {
    verify_hopf_morphism_with(f, tables, hopf, Exec::default())
}

pub fn verify_hopf_morphism_with(
    f: &LinearMap,
    tables: &StructureTables,
    hopf: &HopfTables,
    exec: Exec,
) -> MorphismReport {
    let dim = tables.dim();
    let basis = tables.basis();
    let label = |i: usize| basis[i].to_string();

    let is_algebra_map = exec.find_map_first(dim * dim, |ij| {
        let (i, j) = (ij / dim, ij % dim);
        let left = f.apply(tables, tables.product(i, j));
        let right = tables.mul(f.column(i), f.column(j));
        (left != right).then(|| Counterexample::new(vec![label(i), label(j)], right, left))
    });

    let is_coalgebra_map = exec.find_map_first(dim, |i| {
        let left = hopf.coproduct(tables, f.column(i));
        let mut right = TensorElement::zero();
        for ((a, b), c) in hopf.coproduct_table()[i].terms() {
            right.add_tensor(f.column(tables.index_of(*a)), f.column(tables.index_of(*b)), Some(c));
        }
        (left != right).then(|| Counterexample::new(vec![label(i)], right.to_text(), left.to_text()))
    });

    let commutes_with_antipode = exec.find_map_first(dim, |i| {
        let left = hopf.antipode(tables, f.column(i));
        let right = f.apply(tables, &hopf.antipode_table()[i]);
        (left != right).then(|| Counterexample::new(vec![label(i)], right, left))
    });

    let r = f.rank(tables);
    let is_bijective = (r != dim).then(|| Counterexample::new(vec!["rank".into()], dim, r));

    let image_of_unit = f.apply(tables, tables.unit());
    let is_unital = (&image_of_unit != tables.unit())
        .then(|| Counterexample::new(vec!["1".into()], tables.unit(), &image_of_unit));

    let is_counital = exec.find_map_first(dim, |i| {
        let left = hopf.counit(tables, f.column(i));
        let right = &hopf.counit_table()[i];
        (&left != right).then(|| Counterexample::new(vec![label(i)], right, left))
    });

    MorphismReport {
        is_algebra_map: Verdict::from_search(is_algebra_map),
        is_coalgebra_map: Verdict::from_search(is_coalgebra_map),
        commutes_with_antipode: Verdict::from_search(commutes_with_antipode),
        is_bijective: Verdict::from_search(is_bijective),
        is_unital: Verdict::from_search(is_unital),
        is_counital: Verdict::from_search(is_counital),
    }
}

/// `V^ψ`: the coaction `(ψ^{-1} ⊗ id)ρ`, i.e. `ψ^{-1}` applied to every
/// coaction coefficient.
pub fn twist_comodule(
    psi: &LinearMap,
    c: &Comodule,
    tables: &StructureTables,
    hopf: &HopfTables,
) -> Result<Comodule> {
    let inv = psi.inverse(tables)?;
    let twisted = c.map_entries(|x| inv.apply(tables, x));
    twisted.check_axioms(tables, hopf)?;
    Ok(twisted)
}

/// How supports move under a twist, tested in both orientations.
#[derive(Debug, Clone, Serialize)]
pub struct SupportTransport {
    pub twisted_axioms_hold: bool,
    pub twisted_support_dimension: usize,
    /// `(s', t')` with `Supp(V^ψ) = C_{s't'}`, if any.
    pub matches_subcoalgebra: Option<(u32, u32)>,
    /// `Supp(V^ψ) = ψ^{-1}(Supp V)`
    pub inverse_orientation: bool,
    /// `Supp(V^ψ) = ψ(Supp V)`
    pub direct_orientation: bool,
    /// `ψ(Supp(V^{ψ^{-1}})) = Supp V`
    pub inverse_twist_orientation: bool,
}

impl SupportTransport {
    pub fn some_orientation_holds(&self) -> bool {
        self.inverse_orientation || self.direct_orientation || self.inverse_twist_orientation
    }
}

pub fn support_transport(
    psi: &LinearMap,
    c: &Comodule,
    tables: &StructureTables,
    hopf: &HopfTables,
) -> Result<SupportTransport> {
    let inv = psi.inverse(tables)?;
    let twisted = c.map_entries(|x| inv.apply(tables, x));
    let twisted_axioms_hold = twisted.check_axioms(tables, hopf).is_ok();
    let supp = c.support(tables);
    let supp_twisted = twisted.support(tables);

    let matches_subcoalgebra = all_subcoalgebras(tables)
        .into_iter()
        .find(|cst| cst.subspace(tables).same_as(&supp_twisted, tables))
        .map(|cst| (cst.s, cst.t));

    let pulled_back = supp.image(|x| inv.apply(tables, x), tables);
    let pushed = supp.image(|x| psi.apply(tables, x), tables);
    let other_twist = c.map_entries(|x| psi.apply(tables, x));
    let round = other_twist.support(tables).image(|x| psi.apply(tables, x), tables);

    Ok(SupportTransport {
        twisted_axioms_hold,
        twisted_support_dimension: supp_twisted.dimension,
        matches_subcoalgebra,
        inverse_orientation: supp_twisted.same_as(&pulled_back, tables),
        direct_orientation: supp_twisted.same_as(&pushed, tables),
        inverse_twist_orientation: round.same_as(&supp, tables),
    })
}

/// The image of a subspace, as a helper for callers holding a map.
pub fn map_subspace(f: &LinearMap, space: &Subspace, tables: &StructureTables) -> Subspace {
    space.image(|x| f.apply(tables, x), tables)
}

/// Inverse, refusing maps that are not bijective.
pub fn checked_inverse(f: &LinearMap, tables: &StructureTables) -> Result<LinearMap> {
    if f.rank(tables) != tables.dim() {
        return Err(Error::Singular);
    }
    f.inverse(tables)
}
