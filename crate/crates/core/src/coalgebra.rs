//! Group-likes, the simple subcoalgebras `C_{st}`, the comodules `Λ_{st}`
//! and their supports.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Element, Generator, StructureTables, Word};
use crate::error::{Error, Result};
use crate::field::sqrt_of_sign;
use crate::hopf::{HopfTables, TensorElement};
use crate::linalg::{rank, to_dense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupLikeKind {
    /// `x11^{2s} ± x12^{2s}`
    G,
    /// `x11^{2s+1} χ22^{n-1} ± √λ x12^{2s+1} χ21^{n-1}`
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupLikeLabel {
    pub kind: GroupLikeKind,
    pub s: u32,
    pub plus: bool,
}

impl fmt::Display for GroupLikeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GroupLikeKind::G => 'g',
            GroupLikeKind::H => 'h',
        };
        write!(f, "{k}_{}^{}", self.s, if self.plus { '+' } else { '-' })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupLike {
    pub label: GroupLikeLabel,
    pub element: Element,
}

/// The listed group-likes plus any label pairs naming the same element.
#[derive(Debug, Clone, Serialize)]
pub struct GroupLikeList {
    pub items: Vec<GroupLike>,
    pub collisions: Vec<(String, String)>,
}

fn word_element(tables: &StructureTables, parts: &[(Generator, u32)], tail: (Generator, u32)) -> Element {
    let mut w = Word::default();
    for &(g, k) in parts {
        w = w.concat(&Word::power(g, k));
    }
    tables.normalize(&w.concat(&Word::chi(tail.0, tail.1)))
}

/// Builds the `4N` labelled elements of `G` without checking them.
pub fn group_like_candidates(tables: &StructureTables) -> Vec<GroupLike> {
    let p = *tables.params();
    let ctx = tables.ctx();
    let root = sqrt_of_sign(ctx, p.lambda);
    let mut out = Vec::new();
    for kind in [GroupLikeKind::G, GroupLikeKind::H] {
        for s in 1..=p.big_n {
            let (even, odd) = match kind {
                GroupLikeKind::G => (
                    word_element(tables, &[(Generator::X11, 2 * s)], (Generator::X11, 0)),
                    word_element(tables, &[(Generator::X12, 2 * s)], (Generator::X12, 0)),
                ),
                GroupLikeKind::H => (
                    word_element(tables, &[(Generator::X11, 2 * s + 1)], (Generator::X22, p.n - 1)),
                    word_element(tables, &[(Generator::X12, 2 * s + 1)], (Generator::X21, p.n - 1))
                        .scale(&root),
                ),
            };
            for plus in [true, false] {
                let element = if plus { even.add(&odd) } else { even.sub(&odd) };
                out.push(GroupLike {
                    label: GroupLikeLabel { kind, s, plus },
                    element,
                });
            }
        }
    }
    out
}

/// Why `g` fails to be group-like, if it does.
pub fn group_like_defect(g: &Element, tables: &StructureTables, hopf: &HopfTables) -> Option<String> {
    let delta = hopf.coproduct(tables, g);
    let expected = TensorElement::tensor(g, g);
    if delta != expected {
        return Some(format!("Δg = {} but g⊗g = {}", delta.to_text(), expected.to_text()));
    }
    let e = hopf.counit(tables, g);
    if !e.is_one() {
        return Some(format!("ε(g) = {e}"));
    }
    None
}

/// The set `G`, each element checked to be group-like. Equal elements under
/// different labels are reported in `collisions`, never dropped.
pub fn group_likes(tables: &StructureTables, hopf: &HopfTables) -> Result<GroupLikeList> {
    let items = group_like_candidates(tables);
    for g in &items {
        if let Some(detail) = group_like_defect(&g.element, tables, hopf) {
            return Err(Error::NotGroupLike {
                label: g.label.to_string(),
                detail,
            });
        }
    }
    let mut collisions = Vec::new();
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if a.element == b.element {
                collisions.push((a.label.to_string(), b.label.to_string()));
            }
        }
    }
    Ok(GroupLikeList { items, collisions })
}

/// A subspace of the algebra given by a spanning list.
#[derive(Debug, Clone, Serialize)]
pub struct Subspace {
    pub spanning: Vec<Element>,
    pub dimension: usize,
}

impl Subspace {
    pub fn span(spanning: Vec<Element>, tables: &StructureTables) -> Subspace {
        let dimension = rank(spanning.iter().map(|x| to_dense(x, tables)).collect());
        Subspace { spanning, dimension }
    }

    fn rank_with(&self, extra: &[Element], tables: &StructureTables) -> usize {
        rank(
            self.spanning
                .iter()
                .chain(extra)
                .map(|x| to_dense(x, tables))
                .collect(),
        )
    }

    pub fn contains(&self, x: &Element, tables: &StructureTables) -> bool {
        x.is_zero() || self.rank_with(std::slice::from_ref(x), tables) == self.dimension
    }

    pub fn same_as(&self, other: &Subspace, tables: &StructureTables) -> bool {
        self.dimension == other.dimension && self.rank_with(&other.spanning, tables) == self.dimension
    }

    /// Whether a tensor lies in `self ⊗ self`: every left slice and every
    /// right slice of its coefficient matrix must lie in the subspace.
    pub fn contains_tensor(&self, x: &TensorElement, tables: &StructureTables) -> bool {
        let mut left_slices = std::collections::BTreeMap::new();
        let mut right_slices = std::collections::BTreeMap::new();
        for ((a, b), c) in x.terms() {
            left_slices
                .entry(*b)
                .or_insert_with(Element::zero)
                .add_term(*a, c);
            right_slices
                .entry(*a)
                .or_insert_with(Element::zero)
                .add_term(*b, c);
        }
        left_slices
            .values()
            .chain(right_slices.values())
            .all(|v| self.contains(v, tables))
    }

    /// The image of the subspace under a linear map.
    pub fn image(&self, f: impl Fn(&Element) -> Element, tables: &StructureTables) -> Subspace {
        Subspace::span(self.spanning.iter().map(f).collect(), tables)
    }
}

/// `C_{st}`, spanned by `x11^{2s}χ11^t, x12^{2s}χ12^t, x11^{2s}χ22^t,
/// x12^{2s}χ21^t` in that order.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleSubcoalgebra {
    pub s: u32,
    pub t: u32,
    pub span: [Element; 4],
}

fn check_st(s: u32, t: u32, tables: &StructureTables) -> Result<()> {
    let p = tables.params();
    if s < 1 || s > p.big_n || t < 1 || t >= p.n {
        return Err(Error::OutOfRange(format!(
            "C_{{{s},{t}}} needs s in 1..={} and t in 1..={}",
            p.big_n,
            p.n - 1
        )));
    }
    Ok(())
}

/// Normal form of `x^{2s} χ^t` for the four leading/trailing letter pairs.
pub fn coalgebra_word(tables: &StructureTables, lead: Generator, tail: Generator, s: u32, t: u32) -> Element {
    word_element(tables, &[(lead, 2 * s)], (tail, t))
}

pub fn simple_subcoalgebra(s: u32, t: u32, tables: &StructureTables) -> Result<SimpleSubcoalgebra> {
    check_st(s, t, tables)?;
    use Generator::*;
    let span = [
        coalgebra_word(tables, X11, X11, s, t),
        coalgebra_word(tables, X12, X12, s, t),
        coalgebra_word(tables, X11, X22, s, t),
        coalgebra_word(tables, X12, X21, s, t),
    ];
    Ok(SimpleSubcoalgebra { s, t, span })
}

impl SimpleSubcoalgebra {
    pub fn subspace(&self, tables: &StructureTables) -> Subspace {
        Subspace::span(self.span.to_vec(), tables)
    }

    /// `Δ(C) ⊆ C ⊗ C`
    pub fn is_delta_closed(&self, tables: &StructureTables, hopf: &HopfTables) -> bool {
        let space = self.subspace(tables);
        self.span
            .iter()
            .all(|u| space.contains_tensor(&hopf.coproduct(tables, u), tables))
    }
}

/// All `C_{st}`, `s` in `1..=N`, `t` in `1..n`.
pub fn all_subcoalgebras(tables: &StructureTables) -> Vec<SimpleSubcoalgebra> {
    let p = tables.params();
    let mut out = Vec::new();
    for s in 1..=p.big_n {
        for t in 1..p.n {
            out.push(simple_subcoalgebra(s, t, tables).expect("indices in range"));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub dim: usize,
    pub group_like_labels: usize,
    pub group_like_rank: usize,
    pub group_like_collisions: Vec<(String, String)>,
    pub subcoalgebra_count: usize,
    /// `(s, t, rank, Δ-closed)` per subcoalgebra
    pub subcoalgebras: Vec<(u32, u32, usize, bool)>,
    pub total_rank: usize,
    /// Total rank equals the dimension and the pieces are independent.
    pub complete: bool,
}

/// Checks that `span G ⊕ ⊕ C_{st}` is the whole algebra.
pub fn decompose(tables: &StructureTables, hopf: &HopfTables) -> Result<DecompositionReport> {
    let list = group_likes(tables, hopf)?;
    let g_elements: Vec<Element> = list.items.iter().map(|g| g.element.clone()).collect();
    let group_like_rank = Subspace::span(g_elements.clone(), tables).dimension;

    let coalgebras = all_subcoalgebras(tables);
    let mut rows: Vec<Element> = g_elements;
    let mut pieces = Vec::new();
    let mut piece_sum = group_like_rank;
    for c in &coalgebras {
        let r = c.subspace(tables).dimension;
        piece_sum += r;
        pieces.push((c.s, c.t, r, c.is_delta_closed(tables, hopf)));
        rows.extend(c.span.iter().cloned());
    }
    let total_rank = Subspace::span(rows, tables).dimension;
    let dim = tables.dim();
    let complete = total_rank == dim
        && piece_sum == dim
        && pieces.iter().all(|&(_, _, r, closed)| r == 4 && closed);
    Ok(DecompositionReport {
        dim,
        group_like_labels: list.items.len(),
        group_like_rank,
        group_like_collisions: list.collisions,
        subcoalgebra_count: coalgebras.len(),
        subcoalgebras: pieces,
        total_rank,
        complete,
    })
}

/// A finite-dimensional left comodule with basis `w_1, …, w_r` and coaction
/// `ρ(w_j) = Σ_i c_{ij} ⊗ w_i`; `coaction[i][j]` holds `c_{ij}`.
#[derive(Debug, Clone, Serialize)]
pub struct Comodule {
    pub rank: usize,
    pub coaction: Vec<Vec<Element>>,
}

impl Comodule {
    pub fn new(coaction: Vec<Vec<Element>>) -> Result<Comodule> {
        let rank = coaction.len();
        if coaction.iter().any(|row| row.len() != rank) {
            return Err(Error::ComoduleAxiom("coaction matrix is not square".into()));
        }
        Ok(Comodule { rank, coaction })
    }

    /// `ρ(w) = 1 ⊗ w`
    pub fn trivial(tables: &StructureTables) -> Comodule {
        Comodule {
            rank: 1,
            coaction: vec![vec![tables.unit().clone()]],
        }
    }

    /// Checks `(Δ⊗id)ρ = (id⊗ρ)ρ` and `(ε⊗id)ρ = id`, which on the matrix
    /// read `Δ(c_{kj}) = Σ_i c_{ij} ⊗ c_{ki}` and `ε(c_{ij}) = δ_{ij}`.
    pub fn check_axioms(&self, tables: &StructureTables, hopf: &HopfTables) -> Result<()> {
        let c = &self.coaction;
        for k in 0..self.rank {
            for j in 0..self.rank {
                let lhs = hopf.coproduct(tables, &c[k][j]);
                let mut rhs = TensorElement::zero();
                for i in 0..self.rank {
                    rhs.add_tensor(&c[i][j], &c[k][i], None);
                }
                if lhs != rhs {
                    return Err(Error::ComoduleAxiom(format!(
                        "coassociativity at entry ({},{}): {} vs {}",
                        k + 1,
                        j + 1,
                        lhs.to_text(),
                        rhs.to_text()
                    )));
                }
                let e = hopf.counit(tables, &c[k][j]);
                let want = if k == j { 1 } else { 0 };
                if e != tables.num(want) {
                    return Err(Error::ComoduleAxiom(format!(
                        "counit at entry ({},{}): ε = {e}",
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Span of all coaction coefficients.
    pub fn support(&self, tables: &StructureTables) -> Subspace {
        Subspace::span(self.coaction.iter().flatten().cloned().collect(), tables)
    }

    /// Entrywise image under a linear map.
    pub fn map_entries(&self, f: impl Fn(&Element) -> Element) -> Comodule {
        Comodule {
            rank: self.rank,
            coaction: self
                .coaction
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// `Λ_{st}`: `ρ(w_1) = x11^{2s}χ11^t⊗w_1 + x12^{2s}χ12^t⊗w_2` and
/// `ρ(w_2) = x12^{2s}χ21^t⊗w_1 + x11^{2s}χ22^t⊗w_2`.
pub fn comodule_lambda(s: u32, t: u32, tables: &StructureTables, hopf: &HopfTables) -> Result<Comodule> {
    let c = simple_subcoalgebra(s, t, tables)?;
    let [u1, u2, u3, u4] = c.span;
    let m = Comodule::new(vec![vec![u1, u4], vec![u2, u3]])?;
    m.check_axioms(tables, hopf)?;
    Ok(m)
}
