//! Coproduct, counit and antipode, and the exhaustive Hopf axiom sweep.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{BasisIndex, Element, Family, Generator, StructureTables, Word};
use crate::field::CycNumber;
use crate::parallel::Exec;

/// A sparse element of `A ⊗ A`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(BasisIndex, BasisIndex), CycNumber>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    /// `x ⊗ y`
    pub fn tensor(x: &Element, y: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        out.add_tensor(x, y, None);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BasisIndex, BasisIndex), &CycNumber)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: (BasisIndex, BasisIndex), c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Adds `scale · x ⊗ y` (scale defaults to 1).
    pub fn add_tensor(&mut self, x: &Element, y: &Element, scale: Option<&CycNumber>) {
        for (bx, cx) in x.terms() {
            for (by, cy) in y.terms() {
                let c = cx * cy;
                match scale {
                    Some(s) => self.add_term((*bx, *by), &(&c * s)),
                    None => self.add_term((*bx, *by), &c),
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, scale: &CycNumber) {
        for (k, c) in &other.terms {
            self.add_term(*k, &(c * scale));
        }
    }

    /// Applies `f ⊗ g` leg-wise.
    pub fn map_legs(
        &self,
        left: impl Fn(&BasisIndex) -> Element,
        right: impl Fn(&BasisIndex) -> Element,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            out.add_tensor(&left(a), &right(b), Some(c));
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((a, b), c)| format!("({c})*{a}⊗{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Serialize for TensorElement {
    /// A list of `[left label, right label, coefficient text]` triples.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((a, b), c) in &self.terms {
            seq.serialize_element(&(a.to_string(), b.to_string(), c.to_text()))?;
        }
        seq.end()
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug)]
pub struct HopfTables {
    coproduct: Vec<TensorElement>,
    counit: Vec<CycNumber>,
    antipode: Vec<Element>,
}

/// Populates `Δ` from the closed form on basis words, `ε` from `ε(x_ij) = δ_ij`,
/// and `S` letterwise from `S(x_ij) = x_ji^{4N-1}`.
pub fn build_hopf_tables(tables: &StructureTables) -> HopfTables {
    let p = tables.params();
    let ctx = tables.ctx();
    let mut coproduct = Vec::with_capacity(tables.dim());
    let mut counit = Vec::with_capacity(tables.dim());
    let mut antipode = Vec::with_capacity(tables.dim());
    let tail_power = 4 * p.big_n - 1;

    for b in tables.basis() {
        let (s, t) = (b.s, b.t);
        let even = Element::basis(BasisIndex::e(s, t), ctx);
        let odd = Element::basis(BasisIndex::o(s, t), ctx);
        let mut delta = TensorElement::zero();
        match b.family {
            Family::E => {
                // x21^s χ12^t
                let right = tables.normalize(
                    &Word::power(Generator::X21, s).concat(&Word::chi(Generator::X12, t)),
                );
                delta.add_tensor(&even, &even, None);
                delta.add_tensor(&odd, &right, None);
                counit.push(CycNumber::one(ctx));
            }
            Family::O => {
                // x22^s χ11^t
                let right = tables.normalize(
                    &Word::power(Generator::X22, s).concat(&Word::chi(Generator::X11, t)),
                );
                delta.add_tensor(&even, &odd, None);
                delta.add_tensor(&odd, &right, None);
                counit.push(CycNumber::zero(ctx));
            }
        }
        coproduct.push(delta);

        let mut letters = Vec::new();
        for g in b.word().letters().iter().rev() {
            letters.extend(std::iter::repeat_n(g.transpose(), tail_power as usize));
        }
        antipode.push(tables.normalize(&Word(letters)));
    }

    HopfTables {
        coproduct,
        counit,
        antipode,
    }
}

impl HopfTables {
    pub fn from_parts(
        coproduct: Vec<TensorElement>,
        counit: Vec<CycNumber>,
        antipode: Vec<Element>,
    ) -> HopfTables {
        HopfTables {
            coproduct,
            counit,
            antipode,
        }
    }

    pub fn coproduct_table(&self) -> &[TensorElement] {
        &self.coproduct
    }

    pub fn counit_table(&self) -> &[CycNumber] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[Element] {
        &self.antipode
    }

    pub fn coproduct(&self, tables: &StructureTables, x: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (b, c) in x.terms() {
            out.add_scaled(&self.coproduct[tables.index_of(*b)], c);
        }
        out
    }

    pub fn counit(&self, tables: &StructureTables, x: &Element) -> CycNumber {
        let mut out = CycNumber::zero(tables.ctx());
        for (b, c) in x.terms() {
            let e = &self.counit[tables.index_of(*b)];
            if !e.is_zero() {
                out += &(c * e);
            }
        }
        out
    }

    pub fn antipode(&self, tables: &StructureTables, x: &Element) -> Element {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            out.add_scaled(&self.antipode[tables.index_of(*b)], c);
        }
        out
    }
}

/// Multiplication in `A ⊗ A`.
pub fn tensor_mul(tables: &StructureTables, x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((a, b), c) in x.terms() {
        let (ia, ib) = (tables.index_of(*a), tables.index_of(*b));
        for ((d, e), f) in y.terms() {
            let left = tables.product(ia, tables.index_of(*d));
            if left.is_zero() {
                continue;
            }
            let right = tables.product(ib, tables.index_of(*e));
            if right.is_zero() {
                continue;
            }
            out.add_tensor(left, right, Some(&(c * f)));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(inputs: Vec<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Counterexample {
            inputs,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn from_search(found: Option<Counterexample>) -> Verdict {
        Verdict {
            holds: found.is_none(),
            counterexample: found,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associativity: Verdict,
    pub unit: Verdict,
    pub coassociativity: Verdict,
    pub counit: Verdict,
    pub coproduct_multiplicative: Verdict,
    pub counit_multiplicative: Verdict,
    pub antipode_left: Verdict,
    pub antipode_right: Verdict,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 8] {
        [
            ("associativity", &self.associativity),
            ("unit", &self.unit),
            ("coassociativity", &self.coassociativity),
            ("counit", &self.counit),
            ("coproduct_multiplicative", &self.coproduct_multiplicative),
            ("counit_multiplicative", &self.counit_multiplicative),
            ("antipode_left", &self.antipode_left),
            ("antipode_right", &self.antipode_right),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.verdicts()
            .iter()
            .filter(|(_, v)| !v.holds)
            .map(|(name, _)| *name)
            .collect()
    }
}

pub fn verify_hopf(tables: &StructureTables, hopf: &HopfTables) -> AxiomReport {
    verify_hopf_with(tables, hopf, Exec::default())
}

pub fn verify_hopf_with(tables: &StructureTables, hopf: &HopfTables, exec: Exec) -> AxiomReport {
    let dim = tables.dim();
    let basis = tables.basis();
    let label = |i: usize| basis[i].to_string();
    let el = |i: usize| tables.basis_element(i);
    let unit = tables.unit();

    let associativity = exec.find_map_first(dim * dim, |ij| {
        let (i, j) = (ij / dim, ij % dim);
        let xy = tables.product(i, j);
        (0..dim).find_map(|k| {
            let left = tables.mul(xy, &el(k));
            let right = tables.mul(&el(i), tables.product(j, k));
            (left != right).then(|| Counterexample::new(vec![label(i), label(j), label(k)], left, right))
        })
    });

    let unit_law = exec.find_map_first(dim, |i| {
        let b = el(i);
        let left = tables.mul(unit, &b);
        let right = tables.mul(&b, unit);
        if left != b {
            Some(Counterexample::new(vec!["1".into(), label(i)], &b, left))
        } else if right != b {
            Some(Counterexample::new(vec![label(i), "1".into()], &b, right))
        } else {
            None
        }
    });

    let coassociativity = exec.find_map_first(dim, |i| {
        let delta = &hopf.coproduct[i];
        let mut left: BTreeMap<(BasisIndex, BasisIndex, BasisIndex), CycNumber> = BTreeMap::new();
        let mut right = left.clone();
        let add = |map: &mut BTreeMap<_, CycNumber>, key, c: CycNumber| {
            let entry = map.entry(key).or_insert_with(|| CycNumber::zero(tables.ctx()));
            *entry += &c;
        };
        for ((a, b), c) in delta.terms() {
            for ((a1, a2), c1) in hopf.coproduct[tables.index_of(*a)].terms() {
                add(&mut left, (*a1, *a2, *b), c * c1);
            }
            for ((b1, b2), c2) in hopf.coproduct[tables.index_of(*b)].terms() {
                add(&mut right, (*a, *b1, *b2), c * c2);
            }
        }
        left.retain(|_, c| !c.is_zero());
        right.retain(|_, c| !c.is_zero());
        (left != right).then(|| {
            let show = |m: &BTreeMap<(BasisIndex, BasisIndex, BasisIndex), CycNumber>| {
                m.iter()
                    .map(|((a, b, c), v)| format!("({v})*{a}⊗{b}⊗{c}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            Counterexample::new(vec![label(i)], show(&right), show(&left))
        })
    });

    let counit = exec.find_map_first(dim, |i| {
        let b = el(i);
        let delta = &hopf.coproduct[i];
        let mut left = Element::zero();
        let mut right = Element::zero();
        for ((a, c), v) in delta.terms() {
            let ea = &hopf.counit[tables.index_of(*a)];
            left.add_term(*c, &(v * ea));
            let ec = &hopf.counit[tables.index_of(*c)];
            right.add_term(*a, &(v * ec));
        }
        if left != b {
            Some(Counterexample::new(vec![format!("(ε⊗id)Δ {}", label(i))], &b, left))
        } else if right != b {
            Some(Counterexample::new(vec![format!("(id⊗ε)Δ {}", label(i))], &b, right))
        } else {
            None
        }
    });

    let delta_unit = hopf.coproduct(tables, unit);
    let unit_tensor = TensorElement::tensor(unit, unit);
    let coproduct_multiplicative = if delta_unit != unit_tensor {
        Some(Counterexample::new(vec!["Δ(1)".into()], unit_tensor.to_text(), delta_unit.to_text()))
    } else {
        exec.find_map_first(dim * dim, |ij| {
            let (i, j) = (ij / dim, ij % dim);
            let left = hopf.coproduct(tables, tables.product(i, j));
            let right = tensor_mul(tables, &hopf.coproduct[i], &hopf.coproduct[j]);
            (left != right).then(|| {
                Counterexample::new(vec![label(i), label(j)], right.to_text(), left.to_text())
            })
        })
    };

    let eps_unit = hopf.counit(tables, unit);
    let counit_multiplicative = if !eps_unit.is_one() {
        Some(Counterexample::new(vec!["ε(1)".into()], "1", eps_unit))
    } else {
        exec.find_map_first(dim * dim, |ij| {
            let (i, j) = (ij / dim, ij % dim);
            let left = hopf.counit(tables, tables.product(i, j));
            let right = &hopf.counit[i] * &hopf.counit[j];
            (left != right).then(|| Counterexample::new(vec![label(i), label(j)], right, left))
        })
    };

    let s_unit = hopf.antipode(tables, unit);
    let antipode_side = |left_side: bool| -> Option<Counterexample> {
        if &s_unit != unit {
            return Some(Counterexample::new(vec!["S(1)".into()], unit, &s_unit));
        }
        exec.find_map_first(dim, |i| {
            let mut acc = Element::zero();
            for ((a, b), c) in hopf.coproduct[i].terms() {
                let prod = if left_side {
                    tables.mul(&hopf.antipode[tables.index_of(*a)], &Element::basis(*b, tables.ctx()))
                } else {
                    tables.mul(&Element::basis(*a, tables.ctx()), &hopf.antipode[tables.index_of(*b)])
                };
                acc.add_scaled(&prod, c);
            }
            let expected = tables.scalar(&hopf.counit[i]);
            (acc != expected).then(|| Counterexample::new(vec![label(i)], expected, acc))
        })
    };

    AxiomReport {
        associativity: Verdict::from_search(associativity),
        unit: Verdict::from_search(unit_law),
        coassociativity: Verdict::from_search(coassociativity),
        counit: Verdict::from_search(counit),
        coproduct_multiplicative: Verdict::from_search(coproduct_multiplicative),
        counit_multiplicative: Verdict::from_search(counit_multiplicative),
        antipode_left: Verdict::from_search(antipode_side(true)),
        antipode_right: Verdict::from_search(antipode_side(false)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_structure_tables, AlgebraParams};
    use crate::field::Sign;

    fn setup(big_n: u32, n: u32, mu: Sign, lambda: Sign) -> (StructureTables, HopfTables) {
        let t = build_structure_tables(&AlgebraParams::new(big_n, n, mu, lambda).unwrap());
        let h = build_hopf_tables(&t);
        (t, h)
    }

    #[test]
    fn coproduct_examples() {
        let (t, h) = setup(1, 2, Sign::Plus, Sign::Plus);
        let text = |b: BasisIndex| h.coproduct_table()[t.index_of(b)].to_text();
        assert_eq!(text(BasisIndex::e(1, 0)), "(1)*E(1,0)⊗E(1,0) + (1)*O(1,0)⊗O(2,1)");
        assert_eq!(text(BasisIndex::o(1, 0)), "(1)*E(1,0)⊗O(1,0) + (1)*O(1,0)⊗E(2,1)");
        assert_eq!(text(BasisIndex::e(2, 0)), "(1)*E(2,0)⊗E(2,0) + (1)*O(2,0)⊗O(2,0)");
    }

    #[test]
    fn counit_and_antipode_examples() {
        let (t, h) = setup(1, 2, Sign::Plus, Sign::Minus);
        assert!(h.counit(&t, &t.generator(Generator::X11)).is_one());
        assert!(h.counit(&t, &t.generator(Generator::X12)).is_zero());
        assert!(h.counit(&t, t.unit()).is_one());
        // x11^3 = x11 when N = 1
        assert_eq!(h.antipode(&t, &t.generator(Generator::X11)).to_text(), "E(1,0)");
        assert_eq!(h.antipode(&t, &t.generator(Generator::X12)).to_text(), "O(2,1)");
        assert_eq!(&h.antipode(&t, t.unit()), t.unit());
    }

    #[test]
    fn axioms_hold_on_small_algebras() {
        for (big_n, n, mu, lambda) in [
            (1, 2, Sign::Plus, Sign::Plus),
            (2, 3, Sign::Minus, Sign::Minus),
        ] {
            let (t, h) = setup(big_n, n, mu, lambda);
            let report = verify_hopf(&t, &h);
            assert!(report.all_hold(), "{:?}", report.failures());
            assert_eq!(report, verify_hopf_with(&t, &h, Exec::Sequential));
        }
    }

    #[test]
    fn corrupted_coproduct_is_caught() {
        let (t, h) = setup(1, 2, Sign::Plus, Sign::Minus);
        let mut delta = h.coproduct_table().to_vec();
        let i = t.index_of(BasisIndex::o(1, 1));
        let key = *delta[i].terms().next().unwrap().0;
        delta[i].add_term(key, &t.num(-2));
        let broken = HopfTables::from_parts(
            delta,
            h.counit_table().to_vec(),
            h.antipode_table().to_vec(),
        );
        let report = verify_hopf(&t, &broken);
        assert!(!report.all_hold());
        let failing = report.failures();
        assert!(failing.contains(&"counit"), "{failing:?}");
        assert!(report.counit.counterexample.is_some());
    }

    #[test]
    fn corrupted_product_is_caught() {
        let (t, h) = setup(1, 2, Sign::Plus, Sign::Plus);
        let mut mult = t.products().to_vec();
        let x12 = t.index_of(BasisIndex::o(1, 0));
        mult[x12 * t.dim() + x12] = mult[x12 * t.dim() + x12].neg();
        let broken = StructureTables::from_parts(*t.params(), mult).unwrap();
        let report = verify_hopf(&broken, &h);
        assert!(!report.all_hold());
    }
}
