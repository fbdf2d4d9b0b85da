//! The algebra `A_{Nn}^{μλ}`: generators, words, the normal form onto the
//! basis `x11^s χ22^t`, `x12^s χ21^t`, and the multiplication table.
//!
//! Words whose adjacent letters have mixed parity vanish, so every nonzero
//! word lives in one of two halves: the even half generated by `x11, x22`
//! (family `E`) and the odd half generated by `x12, x21` (family `O`). In
//! either half the square `z` of a generator is central, the alternating
//! words of length `n` obey a braid-type relation, and `z^N` is the half's
//! identity (scaled by `μ` in the odd half). A word therefore reduces to
//! `±z^k · (alternating word)`, which the normal form folds into range.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{CycNumber, FieldContext, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraParams {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    pub mu: Sign,
    pub lambda: Sign,
}

impl AlgebraParams {
    pub fn new(big_n: u32, n: u32, mu: Sign, lambda: Sign) -> Result<AlgebraParams> {
        if big_n < 1 {
            return Err(Error::InvalidParams(format!("N must be at least 1, got {big_n}")));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be at least 2, got {n}")));
        }
        Ok(AlgebraParams {
            big_n,
            n,
            mu,
            lambda,
        })
    }

    pub fn dim(&self) -> usize {
        4 * self.big_n as usize * self.n as usize
    }

    /// `⌊n/2⌋`
    pub fn m(&self) -> u32 {
        self.n / 2
    }

    pub fn conductor(&self) -> u32 {
        4u32.lcm(&(2 * self.big_n))
    }

    pub fn field(&self) -> Arc<FieldContext> {
        FieldContext::for_algebra(self.big_n)
    }

    /// Position of a basis label in the fixed ordering (family `E` first,
    /// then ascending `(s, t)`).
    pub fn index_of(&self, b: BasisIndex) -> Result<usize> {
        if b.s < 1 || b.s > 2 * self.big_n || b.t >= self.n {
            return Err(Error::OutOfRange(format!("{b} for {self}")));
        }
        Ok(self.index_unchecked(b))
    }

    fn index_unchecked(&self, b: BasisIndex) -> usize {
        let half = 2 * self.big_n as usize * self.n as usize;
        let within = (b.s as usize - 1) * self.n as usize + b.t as usize;
        match b.family {
            Family::E => within,
            Family::O => half + within,
        }
    }

    pub fn basis_at(&self, i: usize) -> BasisIndex {
        let half = 2 * self.big_n as usize * self.n as usize;
        let (family, within) = if i < half {
            (Family::E, i)
        } else {
            (Family::O, i - half)
        };
        BasisIndex {
            family,
            s: (within / self.n as usize) as u32 + 1,
            t: (within % self.n as usize) as u32,
        }
    }

    pub fn basis(&self) -> Vec<BasisIndex> {
        (0..self.dim()).map(|i| self.basis_at(i)).collect()
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |s: Sign| if s == Sign::Plus { '+' } else { '-' };
        write!(
            f,
            "A_{{{},{}}}^{{{}{}}}",
            self.big_n,
            self.n,
            sym(self.mu),
            sym(self.lambda)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    X11,
    X12,
    X21,
    X22,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X11, Generator::X12, Generator::X21, Generator::X22];

    pub fn from_indices(i: u8, j: u8) -> Option<Generator> {
        match (i, j) {
            (1, 1) => Some(Generator::X11),
            (1, 2) => Some(Generator::X12),
            (2, 1) => Some(Generator::X21),
            (2, 2) => Some(Generator::X22),
            _ => None,
        }
    }

    pub fn indices(self) -> (u8, u8) {
        match self {
            Generator::X11 => (1, 1),
            Generator::X12 => (1, 2),
            Generator::X21 => (2, 1),
            Generator::X22 => (2, 2),
        }
    }

    /// `(i + j) mod 2`
    pub fn parity(self) -> u8 {
        let (i, j) = self.indices();
        (i + j) % 2
    }

    pub fn family(self) -> Family {
        if self.parity() == 0 {
            Family::E
        } else {
            Family::O
        }
    }

    /// `x_{ij} ↦ x_{ji}`
    pub fn transpose(self) -> Generator {
        let (i, j) = self.indices();
        Generator::from_indices(j, i).expect("valid indices")
    }

    // x11 and x12 lead the basis words of their family
    fn is_leading(self) -> bool {
        matches!(self, Generator::X11 | Generator::X12)
    }

    fn leading(family: Family) -> Generator {
        match family {
            Family::E => Generator::X11,
            Family::O => Generator::X12,
        }
    }

    fn trailing(family: Family) -> Generator {
        match family {
            Family::E => Generator::X22,
            Family::O => Generator::X21,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::X11 => "x11",
            Generator::X12 => "x12",
            Generator::X21 => "x21",
            Generator::X22 => "x22",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    E,
    O,
}

/// A word in the generators; the empty word is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    /// The alternating word `χ_{ij}^m`.
    pub fn chi(first: Generator, m: u32) -> Word {
        let (i, j) = first.indices();
        let second = Generator::from_indices(3 - i, 3 - j).expect("valid indices");
        Word(
            (0..m)
                .map(|k| if k % 2 == 0 { first } else { second })
                .collect(),
        )
    }

    pub fn power(g: Generator, k: u32) -> Word {
        Word(vec![g; k as usize])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Parses space- or `*`-separated letters such as `"x11 x22 x11"`.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if !token.is_empty() {
                let g = match token {
                    "x11" => Generator::X11,
                    "x12" => Generator::X12,
                    "x21" => Generator::X21,
                    "x22" => Generator::X22,
                    _ => {
                        return Err(Error::Parse {
                            position: offset,
                            message: format!("unknown generator '{token}'"),
                        })
                    }
                };
                letters.push(g);
            }
            offset += token.len() + 1;
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<&str> = self.0.iter().map(|g| g.name()).collect();
        f.write_str(&names.join(" "))
    }
}

/// Label of a basis word: `E ↦ x11^s χ22^t`, `O ↦ x12^s χ21^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub family: Family,
    pub s: u32,
    pub t: u32,
}

impl BasisIndex {
    pub fn new(family: Family, s: u32, t: u32) -> BasisIndex {
        BasisIndex { family, s, t }
    }

    pub fn e(s: u32, t: u32) -> BasisIndex {
        BasisIndex::new(Family::E, s, t)
    }

    pub fn o(s: u32, t: u32) -> BasisIndex {
        BasisIndex::new(Family::O, s, t)
    }

    pub fn word(&self) -> Word {
        let lead = Generator::leading(self.family);
        let tail = Generator::trailing(self.family);
        Word::power(lead, self.s).concat(&Word::chi(tail, self.t))
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::E => 'E',
            Family::O => 'O',
        };
        write!(f, "{fam}({},{})", self.s, self.t)
    }
}

/// A sparse linear combination of basis words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<BasisIndex, CycNumber>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(b: BasisIndex, ctx: &Arc<FieldContext>) -> Element {
        Element::term(b, CycNumber::one(ctx))
    }

    pub fn term(b: BasisIndex, c: CycNumber) -> Element {
        let mut out = Element::zero();
        out.add_term(b, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisIndex, CycNumber)>>(terms: I) -> Element {
        let mut out = Element::zero();
        for (b, c) in terms {
            out.add_term(b, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &CycNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisIndex) -> Option<&CycNumber> {
        self.terms.get(b)
    }

    pub fn add_term(&mut self, b: BasisIndex, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, scale: &CycNumber) {
        if scale.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(*b, &(c * scale));
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(b, v)| (*b, -v)).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, &-c);
        }
        out
    }

    /// Canonical text, e.g. `"E(2,0)+O(2,0)"` or `"1/2*E(1,0)-z^1*O(1,1)"`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (b, c) in &self.terms {
            let text = c.to_text();
            if text == "1" {
                if !out.is_empty() {
                    out.push('+');
                }
                out.push_str(&b.to_string());
            } else if text == "-1" {
                out.push('-');
                out.push_str(&b.to_string());
            } else {
                if !out.is_empty() {
                    out.push('+');
                }
                out.push_str(&format!("({text})*{b}"));
            }
        }
        out
    }
}

impl Serialize for Element {
    /// A list of `[basis label, coefficient text]` pairs in basis order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (b, c) in &self.terms {
            seq.serialize_element(&(b.to_string(), c.to_text()))?;
        }
        seq.end()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Result of reducing a word: zero, the unit, or `±` one basis word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduced {
    Zero,
    Unit,
    Term { index: BasisIndex, sign: Sign },
}

/// Reduces a word to `0`, `1` or `±(basis word)`.
pub fn reduce_word(letters: &[Generator], params: &AlgebraParams) -> Reduced {
    let Some(&first) = letters.first() else {
        return Reduced::Unit;
    };
    let family = first.family();
    if letters.iter().any(|g| g.family() != family) {
        return Reduced::Zero;
    }
    let n = params.n as usize;
    let big_n = params.big_n as i64;
    // braid factor: Q_n = c·P_n, with c = 1 in E and λ in O
    let braid_flip = family == Family::O && params.lambda.is_minus();

    let mut sign = Sign::Plus;
    let mut z_exp: i64 = 0;
    // alternating tail: starting letter (true = leading) and length
    let mut lead_start = true;
    let mut len = 0usize;

    for &g in letters {
        let x = g.is_leading();
        if len == 0 {
            lead_start = x;
            len = 1;
        } else {
            let last = if len % 2 == 1 { lead_start } else { !lead_start };
            if last == x {
                len -= 1;
                z_exp += 1;
            } else {
                len += 1;
                if len == n + 1 {
                    // X_{n+1} = c·z·Y_{n-1}
                    z_exp += 1;
                    if braid_flip {
                        sign = sign.flip();
                    }
                    lead_start = !lead_start;
                    len = n - 1;
                }
            }
        }
        if len == n && !lead_start {
            lead_start = true;
            if braid_flip {
                sign = sign.flip();
            }
        }
    }

    // z^N acts as 1 in E and as μ in O
    let wrap_sign = |wraps: i64| -> Sign {
        if family == Family::O {
            params.mu.pow(wraps)
        } else {
            Sign::Plus
        }
    };

    let index = if len == 0 || !lead_start {
        // z^k Q_t, k folded into 1..N
        let k = (z_exp - 1).rem_euclid(big_n) + 1;
        sign = sign * wrap_sign((z_exp - k) / big_n);
        BasisIndex::new(family, 2 * k as u32, len as u32)
    } else {
        // z^k P_m = x^{2k+1} Q_{m-1}, k folded into 0..N-1
        let k = z_exp.rem_euclid(big_n);
        sign = sign * wrap_sign((z_exp - k) / big_n);
        BasisIndex::new(family, 2 * k as u32 + 1, len as u32 - 1)
    };
    Reduced::Term { index, sign }
}

/// The unit `x11^{2N} + μ x12^{2N}`.
pub fn unit(params: &AlgebraParams, ctx: &Arc<FieldContext>) -> Element {
    let two_n = 2 * params.big_n;
    Element::from_terms([
        (BasisIndex::e(two_n, 0), CycNumber::one(ctx)),
        (BasisIndex::o(two_n, 0), CycNumber::from_sign(ctx, params.mu)),
    ])
}

/// Normal form of a word in the basis.
pub fn normalize(word: &Word, params: &AlgebraParams, ctx: &Arc<FieldContext>) -> Element {
    match reduce_word(word.letters(), params) {
        Reduced::Zero => Element::zero(),
        Reduced::Unit => unit(params, ctx),
        Reduced::Term { index, sign } => Element::term(index, CycNumber::from_sign(ctx, sign)),
    }
}

/// Structure constants of `A_{Nn}^{μλ}`: every basis product, and the unit.
#[derive(Clone)]
pub struct StructureTables {
    params: AlgebraParams,
    ctx: Arc<FieldContext>,
    basis: Vec<BasisIndex>,
    mult: Vec<Element>,
    unit: Element,
}

impl fmt::Debug for StructureTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureTables")
            .field("params", &self.params)
            .field("dim", &self.basis.len())
            .finish()
    }
}

pub fn build_structure_tables(params: &AlgebraParams) -> StructureTables {
    let ctx = params.field();
    let basis = params.basis();
    let words: Vec<Word> = basis.iter().map(BasisIndex::word).collect();
    let mut mult = Vec::with_capacity(basis.len() * basis.len());
    for wi in &words {
        for wj in &words {
            mult.push(normalize(&wi.concat(wj), params, &ctx));
        }
    }
    let unit = unit(params, &ctx);
    StructureTables {
        params: *params,
        ctx,
        basis,
        mult,
        unit,
    }
}

impl StructureTables {
    /// Assembles tables from an explicit product list (row-major over the
    /// basis ordering). Used for imports and for mutation tests.
    pub fn from_parts(params: AlgebraParams, mult: Vec<Element>) -> Result<StructureTables> {
        let dim = params.dim();
        if mult.len() != dim * dim {
            return Err(Error::ParamMismatch(format!(
                "expected {} products, got {}",
                dim * dim,
                mult.len()
            )));
        }
        let ctx = params.field();
        Ok(StructureTables {
            unit: unit(&params, &ctx),
            basis: params.basis(),
            params,
            ctx,
            mult,
        })
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn index_of(&self, b: BasisIndex) -> usize {
        self.params.index_unchecked(b)
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.basis[i], &self.ctx)
    }

    pub fn scalar(&self, c: &CycNumber) -> Element {
        self.unit.scale(c)
    }

    pub fn one(&self) -> CycNumber {
        CycNumber::one(&self.ctx)
    }

    pub fn num(&self, value: i64) -> CycNumber {
        CycNumber::from_integer(&self.ctx, value)
    }

    pub fn ratio(&self, num: i64, den: i64) -> CycNumber {
        CycNumber::from_ratio(&self.ctx, num, den)
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.mult[i * self.basis.len() + j]
    }

    pub fn products(&self) -> &[Element] {
        &self.mult
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        for (b, _) in x.terms() {
            self.params.index_of(*b).map_err(|_| {
                Error::ParamMismatch(format!("{b} is not a basis label of {}", self.params))
            })?;
        }
        Ok(())
    }

    /// Product with parameter checking.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of elements known to belong to this algebra.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (bx, cx) in x.terms() {
            let i = self.index_of(*bx);
            for (by, cy) in y.terms() {
                let p = self.product(i, self.index_of(*by));
                if !p.is_zero() {
                    out.add_scaled(p, &(cx * cy));
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &Element, k: u32) -> Element {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn normalize(&self, word: &Word) -> Element {
        normalize(word, &self.params, &self.ctx)
    }

    /// `χ_{ij}^m` in normal form; `m = 0` gives the unit.
    pub fn chi(&self, i: u8, j: u8, m: u32) -> Result<Element> {
        let g = Generator::from_indices(i, j)
            .ok_or_else(|| Error::OutOfRange(format!("generator index ({i},{j})")))?;
        Ok(self.normalize(&Word::chi(g, m)))
    }

    pub fn generator(&self, g: Generator) -> Element {
        self.normalize(&Word(vec![g]))
    }

    /// Evaluates a word whose letters are replaced by the given elements.
    pub fn evaluate_word(&self, word: &Word, images: &dyn Fn(Generator) -> Element) -> Element {
        let mut acc = self.unit.clone();
        for &g in word.letters() {
            acc = self.mul(&acc, &images(g));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(big_n: u32, n: u32, mu: i8, lambda: i8) -> AlgebraParams {
        let s = |v: i8| if v > 0 { Sign::Plus } else { Sign::Minus };
        AlgebraParams::new(big_n, n, s(mu), s(lambda)).unwrap()
    }

    fn term(p: &AlgebraParams, w: &[Generator]) -> Reduced {
        reduce_word(w, p)
    }

    use Generator::*;

    #[test]
    fn invalid_params() {
        assert!(AlgebraParams::new(0, 2, Sign::Plus, Sign::Plus).is_err());
        assert!(AlgebraParams::new(1, 1, Sign::Plus, Sign::Plus).is_err());
    }

    #[test]
    fn basis_ordering_roundtrips() {
        let p = params(2, 3, 1, -1);
        assert_eq!(p.dim(), 24);
        for (i, b) in p.basis().iter().enumerate() {
            assert_eq!(p.index_of(*b).unwrap(), i);
        }
        assert!(p.index_of(BasisIndex::e(5, 0)).is_err());
        assert!(p.index_of(BasisIndex::o(1, 3)).is_err());
    }

    #[test]
    fn mixed_parity_vanishes() {
        let p = params(1, 2, 1, 1);
        assert_eq!(term(&p, &[X11, X12]), Reduced::Zero);
        assert_eq!(term(&p, &[X22, X11, X21]), Reduced::Zero);
    }

    #[test]
    fn squares_agree() {
        let p = params(2, 3, 1, 1);
        let expected = Reduced::Term {
            index: BasisIndex::e(2, 0),
            sign: Sign::Plus,
        };
        assert_eq!(term(&p, &[X22, X22]), expected);
        assert_eq!(term(&p, &[X11, X11]), expected);
    }

    #[test]
    fn exponent_folding() {
        for big_n in 1..=3 {
            let p = params(big_n, 2, -1, 1);
            let w = vec![X11; 2 * big_n as usize + 1];
            assert_eq!(
                term(&p, &w),
                Reduced::Term {
                    index: BasisIndex::e(1, 0),
                    sign: Sign::Plus
                }
            );
            let w = vec![X12; 2 * big_n as usize + 1];
            assert_eq!(
                term(&p, &w),
                Reduced::Term {
                    index: BasisIndex::o(1, 0),
                    sign: Sign::Minus
                }
            );
        }
    }

    #[test]
    fn braid_relation_in_odd_half() {
        for n in 2..=5 {
            for lambda in [1, -1] {
                let p = params(2, n, 1, lambda);
                let w = Word::chi(X21, n);
                let expected_sign = if lambda > 0 { Sign::Plus } else { Sign::Minus };
                assert_eq!(
                    term(&p, w.letters()),
                    Reduced::Term {
                        index: BasisIndex::o(1, n - 1),
                        sign: expected_sign
                    }
                );
            }
        }
    }

    #[test]
    fn chi_examples() {
        let p = params(2, 4, 1, -1);
        let t = build_structure_tables(&p);
        assert_eq!(t.chi(1, 1, 1).unwrap(), t.basis_element(t.index_of(BasisIndex::e(1, 0))));
        let lhs = t.chi(2, 1, 4).unwrap();
        let rhs = t.chi(1, 2, 4).unwrap().neg();
        assert_eq!(lhs, rhs);
        assert_eq!(
            t.chi(2, 2, 5).unwrap(),
            Element::basis(BasisIndex::e(3, 2), t.ctx())
        );
        assert_eq!(&t.chi(1, 1, 0).unwrap(), t.unit());
        assert!(t.chi(3, 1, 1).is_err());
    }

    #[test]
    fn unit_and_table_examples() {
        let p = params(1, 2, -1, 1);
        let t = build_structure_tables(&p);
        assert_eq!(t.dim(), 8);
        assert_eq!(t.products().len(), 64);
        assert_eq!(t.unit().to_text(), "E(2,0)-O(2,0)");
        let x11 = t.basis_element(t.index_of(BasisIndex::e(1, 0)));
        let x12 = t.basis_element(t.index_of(BasisIndex::o(1, 0)));
        assert_eq!(t.mul(&x11, &x11).to_text(), "E(2,0)");
        assert!(t.mul(&x11, &x12).is_zero());
        assert_eq!(t.mul(&x12, &x12).to_text(), "O(2,0)");
        for i in 0..t.dim() {
            let b = t.basis_element(i);
            assert_eq!(t.mul(t.unit(), &b), b);
            assert_eq!(t.mul(&b, t.unit()), b);
        }
        let top = Element::basis(BasisIndex::e(2, 0), t.ctx());
        assert_eq!(t.mul(&top, &x11), x11);
    }

    #[test]
    fn multiply_rejects_foreign_labels() {
        let t = build_structure_tables(&params(1, 2, 1, 1));
        let foreign = Element::basis(BasisIndex::e(4, 0), t.ctx());
        assert!(matches!(
            t.multiply(&foreign, t.unit()),
            Err(Error::ParamMismatch(_))
        ));
    }

    #[test]
    fn normalize_is_idempotent_on_basis_words() {
        let p = params(2, 4, -1, -1);
        let t = build_structure_tables(&p);
        for (i, b) in t.basis().iter().enumerate() {
            assert_eq!(t.normalize(&b.word()), t.basis_element(i), "{b}");
        }
    }

    #[test]
    fn word_parse() {
        let w = Word::parse("x11 x22*x11").unwrap();
        assert_eq!(w, Word::chi(X11, 3));
        assert!(Word::parse("x11 x13").is_err());
        assert_eq!(Word::default().to_string(), "1");
    }
}
