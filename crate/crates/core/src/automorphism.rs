//! The automorphism families `Ψ`, `Φ`, `Γ`, the ansatz residual system, the
//! classified list with its group table, and an independent exhaustive search
//! over a finite coefficient grid.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{AlgebraParams, Element, StructureTables};
use crate::coalgebra::{simple_subcoalgebra, SimpleSubcoalgebra};
use crate::error::{Error, Result};
use crate::field::{enumerate_roots, CycNumber, Sign};
use crate::groups::{identify, GroupInvariants};
use crate::hopf::HopfTables;
use crate::morphism::{from_generator_images, relation_violations, verify_hopf_morphism_with, LinearMap, MorphismReport};
use crate::parallel::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AutVariant {
    Psi,
    Phi,
    Gamma,
}

/// A member of one of the three families. `t` and `xi` are absent for `Γ`
/// (which uses `t = 1`), the thetas are present only for `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutDescriptor {
    pub variant: AutVariant,
    pub s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<CycNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1: Option<Sign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2: Option<Sign>,
}

impl AutDescriptor {
    pub fn psi(s: u32, t: u32, xi: CycNumber) -> AutDescriptor {
        AutDescriptor {
            variant: AutVariant::Psi,
            s,
            t: Some(t),
            xi: Some(xi),
            theta1: None,
            theta2: None,
        }
    }

    pub fn phi(s: u32, t: u32, xi: CycNumber) -> AutDescriptor {
        AutDescriptor {
            variant: AutVariant::Phi,
            ..AutDescriptor::psi(s, t, xi)
        }
    }

    pub fn gamma(theta1: Sign, theta2: Sign, s: u32) -> AutDescriptor {
        AutDescriptor {
            variant: AutVariant::Gamma,
            s,
            t: None,
            xi: None,
            theta1: Some(theta1),
            theta2: Some(theta2),
        }
    }

    /// The `t` used to build the map (`1` for `Γ`).
    pub fn effective_t(&self) -> u32 {
        self.t.unwrap_or(1)
    }
}

impl fmt::Display for AutDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            AutVariant::Gamma => write!(
                f,
                "Gamma[theta1={},theta2={},s={}]",
                self.theta1.unwrap_or(Sign::Plus),
                self.theta2.unwrap_or(Sign::Plus),
                self.s
            ),
            v => write!(
                f,
                "{:?}[s={},t={},xi={}]",
                v,
                self.s,
                self.effective_t(),
                self.xi.as_ref().map(|x| x.to_text()).unwrap_or_default()
            ),
        }
    }
}

/// The twelve ansatz scalars with the target `C_{st}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnsatzCoefficients {
    pub s: u32,
    pub t: u32,
    pub a: [CycNumber; 3],
    pub b: [CycNumber; 3],
    pub d: [CycNumber; 3],
    pub e: [CycNumber; 3],
}

impl AnsatzCoefficients {
    pub const NAMES: [&'static str; 12] = ["a1", "a2", "a3", "b1", "b2", "b3", "d1", "d2", "d3", "e1", "e2", "e3"];

    pub fn get(&self, k: usize) -> &CycNumber {
        match k / 3 {
            0 => &self.a[k % 3],
            1 => &self.b[k % 3],
            2 => &self.d[k % 3],
            _ => &self.e[k % 3],
        }
    }

    pub fn get_mut(&mut self, k: usize) -> &mut CycNumber {
        match k / 3 {
            0 => &mut self.a[k % 3],
            1 => &mut self.b[k % 3],
            2 => &mut self.d[k % 3],
            _ => &mut self.e[k % 3],
        }
    }

    /// Generator images, in [`crate::Generator::ALL`] order:
    /// `x11 ↦ a1 u1 + (1-a1) u3 + a2 u2 + a3 u4`,
    /// `x22 ↦ b1 u1 + (1-b1) u3 + b2 u2 + b3 u4`,
    /// `x12 ↦ d1 u1 - d1 u3 + d2 u2 + d3 u4`,
    /// `x21 ↦ e1 u1 - e1 u3 + e2 u2 + e3 u4`.
    pub fn images(&self, tables: &StructureTables) -> Result<[Element; 4]> {
        let c = simple_subcoalgebra(self.s, self.t, tables)?;
        let one = tables.one();
        let [u1, u2, u3, u4] = &c.span;
        let combo = |k: [&CycNumber; 4]| {
            let mut x = Element::zero();
            x.add_scaled(u1, k[0]);
            x.add_scaled(u2, k[1]);
            x.add_scaled(u3, k[2]);
            x.add_scaled(u4, k[3]);
            x
        };
        let x11 = combo([&self.a[0], &self.a[1], &(&one - &self.a[0]), &self.a[2]]);
        let x22 = combo([&self.b[0], &self.b[1], &(&one - &self.b[0]), &self.b[2]]);
        let x12 = combo([&self.d[0], &self.d[1], &(-&self.d[0]), &self.d[2]]);
        let x21 = combo([&self.e[0], &self.e[1], &(-&self.e[0]), &self.e[2]]);
        Ok([x11, x12, x21, x22])
    }

    /// Reads the coefficients off a map whose generator images lie in a
    /// single `C_{st}` with the ansatz shape.
    pub fn from_map(f: &LinearMap, tables: &StructureTables) -> Result<AnsatzCoefficients> {
        let gens = crate::algebra::Generator::ALL.map(|g| f.apply(tables, &tables.generator(g)));
        let p = tables.params();
        for s in 1..=p.big_n {
            for t in 1..p.n {
                let c = simple_subcoalgebra(s, t, tables)?;
                if let Some(coeffs) = coordinates(&gens, &c) {
                    return from_coordinates(s, t, coeffs, tables);
                }
            }
        }
        Err(Error::NotAnsatzShape("generator images lie in no single C_st".into()))
    }
}

// Coordinates of each image in the (signed basis) spanning set, or None if an
// image leaves the span.
fn coordinates(images: &[Element; 4], c: &SimpleSubcoalgebra) -> Option<[[CycNumber; 4]; 4]> {
    let mut out: Vec<[CycNumber; 4]> = Vec::new();
    for x in images {
        let mut row: Vec<CycNumber> = Vec::new();
        let mut used = 0;
        for u in &c.span {
            let (b, sign) = u.terms().next().expect("spanning words are nonzero");
            debug_assert_eq!(u.len(), 1);
            match x.coeff(b) {
                Some(v) => {
                    used += 1;
                    row.push(v * &sign.inverse().expect("nonzero"));
                }
                None => row.push(CycNumber::zero(sign.context())),
            }
        }
        if used != x.len() {
            return None;
        }
        out.push(row.try_into().ok()?);
    }
    out.try_into().ok()
}

fn from_coordinates(s: u32, t: u32, k: [[CycNumber; 4]; 4], tables: &StructureTables) -> Result<AnsatzCoefficients> {
    let one = tables.one();
    let [x11, x12, x21, x22] = k;
    let shape = |name: &str, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::NotAnsatzShape(format!("image of {name} breaks the ansatz pattern")))
        }
    };
    shape("x11", &x11[0] + &x11[2] == one)?;
    shape("x22", &x22[0] + &x22[2] == one)?;
    shape("x12", (&x12[0] + &x12[2]).is_zero())?;
    shape("x21", (&x21[0] + &x21[2]).is_zero())?;
    let pick = |r: &[CycNumber; 4]| [r[0].clone(), r[1].clone(), r[3].clone()];
    Ok(AnsatzCoefficients {
        s,
        t,
        a: pick(&x11),
        b: pick(&x22),
        d: pick(&x12),
        e: pick(&x21),
    })
}

/// Which branch of the case split a `(t, n)` pair selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseSelector {
    pub t_odd: bool,
    /// `2t = n`
    pub t_is_half: bool,
    /// False for odd `n`, where `t = n/2` cannot occur.
    pub half_branch_reachable: bool,
}

impl CaseSelector {
    pub fn new(t: u32, n: u32) -> CaseSelector {
        CaseSelector {
            t_odd: t % 2 == 1,
            t_is_half: 2 * t == n,
            half_branch_reachable: n.is_multiple_of(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    /// The relation or coproduct identity the clause comes from.
    pub group: &'static str,
    pub clause: &'static str,
    pub value: CycNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualVector {
    pub case: CaseSelector,
    pub clauses: Vec<Residual>,
}

impl ResidualVector {
    pub fn is_zero(&self) -> bool {
        self.clauses.iter().all(|r| r.value.is_zero())
    }

    pub fn nonzero(&self) -> Vec<&Residual> {
        self.clauses.iter().filter(|r| !r.value.is_zero()).collect()
    }

    /// Clauses expressing that the generator images respect the relations.
    pub fn relation_clauses(&self) -> impl Iterator<Item = &Residual> {
        self.clauses.iter().filter(|r| !r.group.starts_with("coproduct"))
    }

    /// Clauses expressing compatibility with the coproduct on `C_{N1}`.
    pub fn coproduct_clauses(&self) -> impl Iterator<Item = &Residual> {
        self.clauses.iter().filter(|r| r.group.starts_with("coproduct"))
    }
}

struct Clauses<'a> {
    out: Vec<Residual>,
    ctx: &'a std::sync::Arc<crate::field::FieldContext>,
}

impl Clauses<'_> {
    fn push(&mut self, group: &'static str, clause: &'static str, value: CycNumber) {
        self.out.push(Residual { group, clause, value });
    }

    fn n(&self, v: i64) -> CycNumber {
        CycNumber::from_integer(self.ctx, v)
    }
}

const COPRODUCT_CLAUSES: [(&str, &str); 18] = [
    ("coproduct on x11", "a1^2+d1e1-a1"),
    ("coproduct on x11", "a2a1+d2e1"),
    ("coproduct on x11", "a1a2+d1e2-a2"),
    ("coproduct on x11", "a2^2+d2e2"),
    ("coproduct on x11", "a1a3+d1e3"),
    ("coproduct on x11", "a2a3+d2e3-a1"),
    ("coproduct on x11", "a3a1+d3e1-a3"),
    ("coproduct on x11", "a3a2+d3e2-(1-a1)"),
    ("coproduct on x11", "a3^2+d3e3"),
    ("coproduct on x12", "a1d1+d1b1-d1"),
    ("coproduct on x12", "a1d2+d1b2-d2"),
    ("coproduct on x12", "a1d3+d1b3"),
    ("coproduct on x12", "a2d1+d2b1"),
    ("coproduct on x12", "a2d2+d2b2"),
    ("coproduct on x12", "a2d3+d2b3-d1"),
    ("coproduct on x12", "a3d1+d3b1-d3"),
    ("coproduct on x12", "a3d2+d3b2+d1"),
    ("coproduct on x12", "a3d3+d3b3"),
];

/// Clause `i` of the coproduct identities, as `LHS - RHS`.
fn coproduct_clause(c: &AnsatzCoefficients, i: usize) -> CycNumber {
    let [a1, a2, a3] = &c.a;
    let [b1, b2, b3] = &c.b;
    let [d1, d2, d3] = &c.d;
    let [e1, e2, e3] = &c.e;
    // (x, y, z, w, r) stands for x*y + z*w - r
    let (x, y, z, w, r): (_, _, _, _, Option<CycNumber>) = match i {
        0 => (a1, a1, d1, e1, Some(a1.clone())),
        1 => (a2, a1, d2, e1, None),
        2 => (a1, a2, d1, e2, Some(a2.clone())),
        3 => (a2, a2, d2, e2, None),
        4 => (a1, a3, d1, e3, None),
        5 => (a2, a3, d2, e3, Some(a1.clone())),
        6 => (a3, a1, d3, e1, Some(a3.clone())),
        7 => (a3, a2, d3, e2, Some(&CycNumber::one(a1.context()) - a1)),
        8 => (a3, a3, d3, e3, None),
        9 => (a1, d1, d1, b1, Some(d1.clone())),
        10 => (a1, d2, d1, b2, Some(d2.clone())),
        11 => (a1, d3, d1, b3, None),
        12 => (a2, d1, d2, b1, None),
        13 => (a2, d2, d2, b2, None),
        14 => (a2, d3, d2, b3, Some(d1.clone())),
        15 => (a3, d1, d3, b1, Some(d3.clone())),
        16 => (a3, d2, d3, b2, Some(-d1)),
        _ => (a3, d3, d3, b3, None),
    };
    let mut v = x * y;
    if !z.is_zero() && !w.is_zero() {
        v += &(z * w);
    }
    match r {
        Some(r) => &v - &r,
        None => v,
    }
}

/// The coproduct clauses only: `Δφ = (φ⊗φ)Δ` on `x11` and on `x12`,
/// written in the ansatz coordinates.
pub fn coproduct_residuals(c: &AnsatzCoefficients) -> Vec<Residual> {
    COPRODUCT_CLAUSES
        .iter()
        .enumerate()
        .map(|(i, &(group, clause))| Residual {
            group,
            clause,
            value: coproduct_clause(c, i),
        })
        .collect()
}

/// Every clause of the case selected by `(t, n)`, as `LHS - RHS`.
pub fn residuals(c: &AnsatzCoefficients, params: &AlgebraParams) -> ResidualVector {
    let case = CaseSelector::new(c.t, params.n);
    let ctx = c.a[0].context();
    let mut r = Clauses { out: Vec::new(), ctx };
    let lam = r.n(params.lambda.as_i64());
    let one = r.n(1);
    let two = r.n(2);
    let one_plus_lam = &one + &lam;
    let [a1, a2, a3] = &c.a;
    let [b1, b2, b3] = &c.b;
    let [d1, d2, d3] = &c.d;
    let [e1, e2, e3] = &c.e;
    let half = case.t_is_half;

    // φ(x11²) = φ(x22²) and φ(x12²) = φ(x21²)
    let g = "x11^2 = x22^2";
    r.push(g, "(a1-b1)(1-a1-b1)", &(a1 - b1) * &(&(&one - a1) - b1));
    if case.t_odd {
        r.push(g, "a2^2+a3^2-b2^2-b3^2", &(&(a2 * a2) + &(a3 * a3)) - &(&(b2 * b2) + &(b3 * b3)));
        if half {
            r.push(g, "(1+lambda)(a2a3-b2b3)", &one_plus_lam * &(&(a2 * a3) - &(b2 * b3)));
        } else {
            r.push(g, "a2a3-b2b3", &(a2 * a3) - &(b2 * b3));
        }
    } else {
        r.push(g, "a2a3-b2b3", &(a2 * a3) - &(b2 * b3));
        if half {
            r.push(
                g,
                "a2^2+lambda a3^2-b2^2-lambda b3^2",
                &(&(a2 * a2) + &(&lam * &(a3 * a3))) - &(&(b2 * b2) + &(&lam * &(b3 * b3))),
            );
        } else {
            r.push(g, "a1-b1", a1 - b1);
            r.push(g, "a2^2-b2^2", &(a2 * a2) - &(b2 * b2));
            r.push(g, "a3^2-b3^2", &(a3 * a3) - &(b3 * b3));
        }
    }
    let g = "x12^2 = x21^2";
    r.push(g, "d1^2-e1^2", &(d1 * d1) - &(e1 * e1));
    if case.t_odd {
        r.push(g, "d2^2+d3^2-e2^2-e3^2", &(&(d2 * d2) + &(d3 * d3)) - &(&(e2 * e2) + &(e3 * e3)));
        if half {
            r.push(g, "(1+lambda)(d2d3-e2e3)", &one_plus_lam * &(&(d2 * d3) - &(e2 * e3)));
        } else {
            r.push(g, "d2d3-e2e3", &(d2 * d3) - &(e2 * e3));
        }
    } else {
        r.push(g, "d2d3-e2e3", &(d2 * d3) - &(e2 * e3));
        if half {
            r.push(
                g,
                "d2^2+lambda d3^2-e2^2-lambda e3^2",
                &(&(d2 * d2) + &(&lam * &(d3 * d3))) - &(&(e2 * e2) + &(&lam * &(e3 * e3))),
            );
        } else {
            r.push(g, "d2^2-e2^2", &(d2 * d2) - &(e2 * e2));
            r.push(g, "d3^2-e3^2", &(d3 * d3) - &(e3 * e3));
        }
    }

    // mixed products: φ(x x') = 0 for x in {x11, x22}, x' in {x12, x21}
    let mixed: [(&'static str, &[CycNumber; 3], &[CycNumber; 3], [&'static str; 6]); 4] = [
        (
            "x11 x12 = 0",
            &c.a,
            &c.d,
            ["(1-2a1)d1", "a2d2+a3d3|a2d3+a3d2", "d1", "a2d3|a2d2", "a3d2|a3d3", "a2d3+lambda a3d2|a2d2+lambda a3d3"],
        ),
        (
            "x22 x12 = 0",
            &c.b,
            &c.d,
            ["(1-2b1)d1", "b2d2+b3d3|b2d3+b3d2", "d1", "b2d3|b2d2", "b3d2|b3d3", "b2d3+lambda b3d2|b2d2+lambda b3d3"],
        ),
        (
            "x11 x21 = 0",
            &c.a,
            &c.e,
            ["(1-2a1)e1", "a2e2+a3e3|a2e3+a3e2", "e1", "a2e3|a2e2", "a3e2|a3e3", "a2e3+lambda a3e2|a2e2+lambda a3e3"],
        ),
        (
            "x22 x21 = 0",
            &c.b,
            &c.e,
            ["(1-2b1)e1", "b2e2+b3e3|b2e3+b3e2", "e1", "b2e3|b2e2", "b3e2|b3e3", "b2e3+lambda b3e2|b2e2+lambda b3e3"],
        ),
    ];
    for (g, x, y, names) in mixed {
        // odd t takes the first name of each "odd|even" pair, even t the second
        let pick = |name: &'static str| -> &'static str {
            let mut parts = name.split('|');
            let first = parts.next().unwrap_or(name);
            if case.t_odd {
                first
            } else {
                parts.next().unwrap_or(first)
            }
        };
        let (same, cross) = if case.t_odd { ((1, 1), (2, 2)) } else { ((1, 2), (2, 1)) };
        let (p, q) = if case.t_odd { ((1, 2), (2, 1)) } else { ((1, 1), (2, 2)) };
        r.push(g, pick(names[0]), &(&one - &(&two * &x[0])) * &y[0]);
        r.push(g, pick(names[1]), &(&x[same.0] * &y[same.1]) + &(&x[cross.0] * &y[cross.1]));
        if half {
            r.push(g, pick(names[5]), &(&x[p.0] * &y[p.1]) + &(&lam * &(&x[q.0] * &y[q.1])));
        } else {
            r.push(g, pick(names[2]), y[0].clone());
            r.push(g, pick(names[3]), &x[p.0] * &y[p.1]);
            r.push(g, pick(names[4]), &x[q.0] * &y[q.1]);
        }
    }

    r.out.extend(coproduct_residuals(c));
    ResidualVector { case, clauses: r.out }
}

/// Builds a family member; ranges are checked, side conditions are not.
pub fn make(d: &AutDescriptor, tables: &StructureTables) -> Result<crate::morphism::GeneratedMap> {
    let t = d.effective_t();
    let c = simple_subcoalgebra(d.s, t, tables)?;
    let [u1, u2, u3, u4] = &c.span;
    let images = match d.variant {
        AutVariant::Psi | AutVariant::Phi => {
            let xi = d
                .xi
                .clone()
                .ok_or_else(|| Error::InvalidParams("missing xi".into()))?;
            let inv = xi.inverse().map_err(|_| Error::InvalidParams("xi must be nonzero".into()))?;
            if d.variant == AutVariant::Psi {
                [u1.clone(), u2.scale(&xi), u4.scale(&inv), u3.clone()]
            } else {
                [u3.clone(), u4.scale(&xi), u2.scale(&inv), u1.clone()]
            }
        }
        AutVariant::Gamma => {
            let half = tables.ratio(1, 2);
            let th1 = tables.num(d.theta1.unwrap_or(Sign::Plus).as_i64());
            let th2 = tables.num(d.theta2.unwrap_or(Sign::Plus).as_i64());
            let sum_e = u1.add(u3);
            let diff_e = u1.sub(u3);
            let sum_o = u2.add(u4).scale(&th2);
            let diff_o = u2.sub(u4).scale(&th2);
            let h1 = &half * &th1;
            [
                sum_e.add(&sum_o).scale(&half),
                diff_e.sub(&diff_o).scale(&h1),
                diff_e.add(&diff_o).scale(&h1),
                sum_e.sub(&sum_o).scale(&half),
            ]
        }
    };
    Ok(from_generator_images(&images, tables))
}

pub fn make_psi(s: u32, t: u32, xi: CycNumber, tables: &StructureTables) -> Result<crate::morphism::GeneratedMap> {
    make(&AutDescriptor::psi(s, t, xi), tables)
}

pub fn make_phi(s: u32, t: u32, xi: CycNumber, tables: &StructureTables) -> Result<crate::morphism::GeneratedMap> {
    make(&AutDescriptor::phi(s, t, xi), tables)
}

pub fn make_gamma(
    theta1: Sign,
    theta2: Sign,
    s: u32,
    tables: &StructureTables,
) -> Result<crate::morphism::GeneratedMap> {
    make(&AutDescriptor::gamma(theta1, theta2, s), tables)
}

/// The side conditions split into the part not involving `ξ` and the part
/// constraining `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub base: bool,
    pub xi: bool,
}

pub fn condition_check(d: &AutDescriptor, params: &AlgebraParams) -> ConditionCheck {
    let big_n = params.big_n as u64;
    let n = params.n;
    let s = d.s;
    let s_ok = s >= 1 && s <= params.big_n;
    match d.variant {
        AutVariant::Gamma => ConditionCheck {
            base: s_ok
                && n == 2
                && params.lambda == Sign::Plus
                && params.mu == Sign::Plus
                && (2 * s as u64 + 1).gcd(&big_n) == 1,
            xi: true,
        },
        AutVariant::Psi | AutVariant::Phi => {
            let Some(t) = d.t else {
                return ConditionCheck { base: false, xi: false };
            };
            let coprime = (2 * s as u64 + t as u64).gcd(&big_n) == 1;
            let generic = t % 2 == 1 && 2 * t != n;
            let half_one = 2 * t == n && t == 1;
            let base = s_ok && t >= 1 && t < n && coprime && (generic || half_one);
            let xi = match &d.xi {
                None => false,
                Some(x) if x.is_zero() => false,
                Some(x) => {
                    let order = if n % 2 == 1 && !half_one { 2 } else { 2 * params.big_n as u64 };
                    x.pow(order).is_one()
                }
            };
            ConditionCheck { base, xi }
        }
    }
}

/// The stated side conditions for the descriptor to be an automorphism.
pub fn conditions_hold(d: &AutDescriptor, params: &AlgebraParams) -> bool {
    let c = condition_check(d, params);
    c.base && c.xi
}

/// Outcome of building and verifying one descriptor.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateResult {
    pub descriptor: AutDescriptor,
    pub conditions_hold: bool,
    pub well_defined: bool,
    pub violated_relations: Vec<String>,
    pub report: MorphismReport,
    pub verified: bool,
    /// First failing check, relations before morphism verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    /// Index into the distinct verified maps, if verified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_index: Option<usize>,
}

pub fn verify_descriptor(
    d: &AutDescriptor,
    tables: &StructureTables,
    hopf: &HopfTables,
    exec: Exec,
) -> Result<(CandidateResult, LinearMap)> {
    let g = make(d, tables)?;
    let report = verify_hopf_morphism_with(&g.map, tables, hopf, exec);
    let verified = g.well_defined && report.all_hold();
    let first_failure = if let Some(rel) = g.violated_relations.first() {
        Some(format!("relation {rel}"))
    } else {
        report.first_failure().map(|(name, v)| match &v.counterexample {
            Some(c) => format!("{name} at {}", c.inputs.join(", ")),
            None => name.to_string(),
        })
    };
    Ok((
        CandidateResult {
            descriptor: d.clone(),
            conditions_hold: conditions_hold(d, tables.params()),
            well_defined: g.well_defined,
            violated_relations: g.violated_relations,
            report,
            verified,
            first_failure,
            map_index: None,
        },
        g.map,
    ))
}

/// The roots of unity of order `k` that the coefficient field contains.
fn roots_in_field(tables: &StructureTables, k: u32) -> Vec<CycNumber> {
    let m = tables.ctx().conductor();
    enumerate_roots(tables.ctx(), k.gcd(&m)).expect("divides the conductor")
}

/// Every descriptor allowed by the stated side conditions.
pub fn classified_descriptors(tables: &StructureTables) -> Vec<AutDescriptor> {
    let p = *tables.params();
    let mut out = Vec::new();
    let xis = roots_in_field(tables, 2 * p.big_n);
    for variant in [AutVariant::Psi, AutVariant::Phi] {
        for s in 1..=p.big_n {
            for t in 1..p.n {
                for xi in &xis {
                    let d = AutDescriptor {
                        variant,
                        ..AutDescriptor::psi(s, t, xi.clone())
                    };
                    if conditions_hold(&d, &p) {
                        out.push(d);
                    }
                }
            }
        }
    }
    for s in 1..=p.big_n {
        for th1 in [Sign::Plus, Sign::Minus] {
            for th2 in [Sign::Plus, Sign::Minus] {
                let d = AutDescriptor::gamma(th1, th2, s);
                if conditions_hold(&d, &p) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// For each `Ψ`/`Φ` slot `(s, t)` meeting the non-`ξ` conditions: the `ξ`
/// values the stated conditions allow, and those that actually verify, among
/// all roots of unity in the field.
#[derive(Debug, Clone, Serialize)]
pub struct XiSlot {
    pub variant: AutVariant,
    pub s: u32,
    pub t: u32,
    pub stated: Vec<String>,
    pub verified: Vec<String>,
    pub agrees: bool,
}

pub fn xi_report(tables: &StructureTables, hopf: &HopfTables, exec: Exec) -> Vec<XiSlot> {
    let p = *tables.params();
    let all_roots = roots_in_field(tables, tables.ctx().conductor());
    let mut slots = Vec::new();
    for variant in [AutVariant::Psi, AutVariant::Phi] {
        for s in 1..=p.big_n {
            for t in 1..p.n {
                let probe = AutDescriptor {
                    variant,
                    ..AutDescriptor::psi(s, t, tables.one())
                };
                if condition_check(&probe, &p).base {
                    slots.push(probe);
                }
            }
        }
    }
    exec.map(&slots, |probe| {
        let mut stated = Vec::new();
        let mut verified = Vec::new();
        for xi in &all_roots {
            let d = AutDescriptor {
                xi: Some(xi.clone()),
                ..probe.clone()
            };
            if conditions_hold(&d, &p) {
                stated.push(xi.to_text());
            }
            let ok = verify_descriptor(&d, tables, hopf, Exec::Sequential)
                .map(|(r, _)| r.verified)
                .unwrap_or(false);
            if ok {
                verified.push(xi.to_text());
            }
        }
        XiSlot {
            variant: probe.variant,
            s: probe.s,
            t: probe.effective_t(),
            agrees: stated == verified,
            stated,
            verified,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub kind: String,
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DedupStats {
    pub candidates: usize,
    pub verified: usize,
    pub distinct_maps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub params: AlgebraParams,
    pub candidates: Vec<CandidateResult>,
    /// Distinct verified maps, in order of first appearance.
    pub maps: Vec<LinearMap>,
    /// Descriptors naming each distinct map.
    pub names: Vec<Vec<String>>,
    pub dedup: DedupStats,
    pub xi_slots: Vec<XiSlot>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Instantiates every classified descriptor, verifies it, and deduplicates
/// the verified maps by matrix equality. Failures and `ξ`-set mismatches go
/// to the discrepancy log.
pub fn enumerate_classified(tables: &StructureTables, hopf: &HopfTables) -> Result<Classification> {
    enumerate_classified_with(tables, hopf, Exec::default())
}

pub fn enumerate_classified_with(tables: &StructureTables, hopf: &HopfTables, exec: Exec) -> Result<Classification> {
    let descriptors = classified_descriptors(tables);
    let results = exec.map(&descriptors, |d| verify_descriptor(d, tables, hopf, Exec::Sequential));
    let mut candidates = Vec::new();
    let mut maps: Vec<LinearMap> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut discrepancies = Vec::new();
    for r in results {
        let (mut cand, map) = r?;
        if cand.verified {
            let idx = match maps.iter().position(|m| *m == map) {
                Some(i) => i,
                None => {
                    maps.push(map);
                    names.push(Vec::new());
                    maps.len() - 1
                }
            };
            names[idx].push(cand.descriptor.to_string());
            cand.map_index = Some(idx);
        } else {
            discrepancies.push(Discrepancy {
                kind: "classified candidate fails verification".into(),
                subject: cand.descriptor.to_string(),
                detail: cand.first_failure.clone().unwrap_or_default(),
            });
        }
        candidates.push(cand);
    }
    let xi_slots = xi_report(tables, hopf, exec);
    for slot in &xi_slots {
        if !slot.agrees {
            discrepancies.push(Discrepancy {
                kind: "xi set differs from stated conditions".into(),
                subject: format!("{:?}[s={},t={}]", slot.variant, slot.s, slot.t),
                detail: format!("stated {:?}, verified {:?}", slot.stated, slot.verified),
            });
        }
    }
    let dedup = DedupStats {
        candidates: candidates.len(),
        verified: candidates.iter().filter(|c| c.verified).count(),
        distinct_maps: maps.len(),
    };
    Ok(Classification {
        params: *tables.params(),
        candidates,
        maps,
        names,
        dedup,
        xi_slots,
        discrepancies,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureFailure {
    pub left: usize,
    pub right: usize,
    /// Canonical text of the composite that is missing from the set.
    pub composite: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupTable {
    pub order: usize,
    /// `table[i][j]` is the index of `maps[i] ∘ maps[j]`; `None` where the
    /// composite falls outside the set.
    pub table: Vec<Vec<Option<usize>>>,
    pub identity: Option<usize>,
    /// `inverses[i] = j` with `maps[i] ∘ maps[j] = id`.
    pub inverses: Vec<Option<usize>>,
    pub closure_failures: Vec<ClosureFailure>,
    pub is_group: bool,
}

impl GroupTable {
    /// The full table when the set is a group.
    pub fn complete_table(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_group {
            return None;
        }
        Some(
            self.table
                .iter()
                .map(|row| row.iter().map(|x| x.expect("closed")).collect())
                .collect(),
        )
    }
}

pub fn group_table(maps: &[LinearMap], tables: &StructureTables) -> GroupTable {
    let index: HashMap<String, usize> = maps.iter().enumerate().map(|(i, m)| (m.canonical_key(), i)).collect();
    let order = maps.len();
    let identity = maps.iter().position(|m| m.is_identity(tables));
    let mut table = vec![vec![None; order]; order];
    let mut closure_failures = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            let h = f.compose(g, tables);
            match index.get(&h.canonical_key()) {
                Some(&k) => table[i][j] = Some(k),
                None => closure_failures.push(ClosureFailure {
                    left: i,
                    right: j,
                    composite: h.canonical_key(),
                }),
            }
        }
    }
    let inverses: Vec<Option<usize>> = (0..order)
        .map(|i| identity.and_then(|e| (0..order).find(|&j| table[i][j] == Some(e) && table[j][i] == Some(e))))
        .collect();
    let is_group = order > 0 && identity.is_some() && closure_failures.is_empty() && inverses.iter().all(Option::is_some);
    GroupTable {
        order,
        table,
        identity,
        inverses,
        closure_failures,
        is_group,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub invariants: GroupInvariants,
    /// Catalog groups with the same invariants.
    pub candidates: Vec<String>,
}

/// Invariants of a closed group table, with catalog matches.
pub fn group_invariants(g: &GroupTable) -> Option<GroupReport> {
    let table = g.complete_table()?;
    let invariants = GroupInvariants::from_table(&table, g.identity?);
    let candidates = identify(&invariants);
    Some(GroupReport { invariants, candidates })
}

/// Classification, group table and every discrepancy found along the way.
#[derive(Debug, Clone, Serialize)]
pub struct Audit {
    pub classification: Classification,
    pub group: GroupTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_report: Option<GroupReport>,
    /// Classification discrepancies followed by closure failures.
    pub discrepancies: Vec<Discrepancy>,
}

impl Audit {
    pub fn clean(&self) -> bool {
        self.discrepancies.is_empty() && self.group.is_group
    }
}

pub fn audit(tables: &StructureTables, hopf: &HopfTables, exec: Exec) -> Result<Audit> {
    let classification = enumerate_classified_with(tables, hopf, exec)?;
    let group = group_table(&classification.maps, tables);
    let group_report = group_invariants(&group);
    let mut discrepancies = classification.discrepancies.clone();
    let label = |i: usize| classification.names[i].first().cloned().unwrap_or_else(|| format!("#{i}"));
    if !group.closure_failures.is_empty() {
        let shown: Vec<String> = group
            .closure_failures
            .iter()
            .take(5)
            .map(|f| format!("{} o {}", label(f.left), label(f.right)))
            .collect();
        discrepancies.push(Discrepancy {
            kind: "classified set not closed under composition".into(),
            subject: format!("{} distinct maps", group.order),
            detail: format!(
                "{} of {} composites fall outside the set, first: {}",
                group.closure_failures.len(),
                group.order * group.order,
                shown.join("; ")
            ),
        });
    }
    if group.identity.is_none() {
        discrepancies.push(Discrepancy {
            kind: "identity missing".into(),
            subject: format!("{} distinct maps", group.order),
            detail: "no classified map is the identity".into(),
        });
    }
    Ok(Audit {
        classification,
        group,
        group_report,
        discrepancies,
    })
}

/// Named coefficient grids for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridPreset {
    /// `{0, ±1, ±1/2} ∪ G_k ∪ ½·G_k` with `k = gcd(4N, M)`.
    Default,
    /// `{0, ±1, ±1/2}`
    Rational,
}

impl GridPreset {
    pub fn parse(name: &str) -> Option<GridPreset> {
        match name {
            "default" => Some(GridPreset::Default),
            "rational" => Some(GridPreset::Rational),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GridPreset::Default => "default",
            GridPreset::Rational => "rational",
        }
    }

    pub fn values(self, tables: &StructureTables) -> Vec<CycNumber> {
        let mut out = vec![
            tables.num(0),
            tables.num(1),
            tables.num(-1),
            tables.ratio(1, 2),
            tables.ratio(-1, 2),
        ];
        if self == GridPreset::Default {
            let k = 4 * tables.params().big_n;
            let half = tables.ratio(1, 2);
            for r in roots_in_field(tables, k) {
                let h = &r * &half;
                out.push(r);
                out.push(h);
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|x| seen.insert(x.clone()));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    pub coefficients: AnsatzCoefficients,
    pub map: LinearMap,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub full_assignments: u64,
    pub relation_rejects: u64,
    pub verification_rejects: u64,
    pub verified: u64,
    /// Verified maps whose relation clauses are nonzero (the clauses would
    /// have wrongly excluded them).
    pub relation_clause_false_rejections: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.full_assignments += other.full_assignments;
        self.relation_rejects += other.relation_rejects;
        self.verification_rejects += other.verification_rejects;
        self.verified += other.verified;
        self.relation_clause_false_rejections += other.relation_clause_false_rejections;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub grid: Vec<String>,
    /// Distinct verified maps, sorted by canonical text.
    pub hits: Vec<SearchHit>,
    pub stats: SearchStats,
}

// Order in which coefficients are assigned; coproduct clauses are checked as
// soon as their variables are known.
const ORDER: [usize; 12] = [0, 6, 9, 1, 7, 10, 2, 8, 11, 3, 4, 5];

fn coproduct_clause_ready(level: usize) -> &'static [usize] {
    // clauses that become decidable once ORDER[..=level] is assigned
    match level {
        2 => &[0],
        4 => &[1],
        5 => &[2, 3],
        7 => &[6, 7],
        8 => &[4, 5, 8],
        9 => &[9, 12, 15],
        10 => &[10, 13, 16],
        11 => &[11, 14, 17],
        _ => &[],
    }
}

/// Every verified automorphism whose generator images have the ansatz shape
/// with coefficients from `grid`.
pub fn exhaustive_search(tables: &StructureTables, hopf: &HopfTables, grid: &[CycNumber]) -> SearchReport {
    exhaustive_search_with(tables, hopf, grid, Exec::default())
}

pub fn exhaustive_search_with(
    tables: &StructureTables,
    hopf: &HopfTables,
    grid: &[CycNumber],
    exec: Exec,
) -> SearchReport {
    let p = *tables.params();
    let mut tasks = Vec::new();
    for s in 1..=p.big_n {
        for t in 1..p.n {
            for a1 in 0..grid.len() {
                tasks.push((s, t, a1));
            }
        }
    }
    let results = exec.map(&tasks, |&(s, t, a1)| search_task(tables, hopf, grid, s, t, a1));
    let mut stats = SearchStats::default();
    let mut hits: BTreeMap<String, SearchHit> = BTreeMap::new();
    for (task_hits, task_stats) in results {
        stats.absorb(&task_stats);
        for h in task_hits {
            hits.entry(h.map.canonical_key()).or_insert(h);
        }
    }
    SearchReport {
        grid: grid.iter().map(|x| x.to_text()).collect(),
        hits: hits.into_values().collect(),
        stats,
    }
}

fn search_task(
    tables: &StructureTables,
    hopf: &HopfTables,
    grid: &[CycNumber],
    s: u32,
    t: u32,
    a1: usize,
) -> (Vec<SearchHit>, SearchStats) {
    let zero = tables.num(0);
    let mut coeffs = AnsatzCoefficients {
        s,
        t,
        a: [zero.clone(), zero.clone(), zero.clone()],
        b: [zero.clone(), zero.clone(), zero.clone()],
        d: [zero.clone(), zero.clone(), zero.clone()],
        e: [zero.clone(), zero.clone(), zero.clone()],
    };
    *coeffs.get_mut(ORDER[0]) = grid[a1].clone();
    let mut stats = SearchStats::default();
    let mut hits = Vec::new();
    descend(tables, hopf, grid, &mut coeffs, 1, &mut stats, &mut hits);
    (hits, stats)
}

fn descend(
    tables: &StructureTables,
    hopf: &HopfTables,
    grid: &[CycNumber],
    coeffs: &mut AnsatzCoefficients,
    level: usize,
    stats: &mut SearchStats,
    hits: &mut Vec<SearchHit>,
) {
    stats.nodes += 1;
    if coproduct_clause_ready(level - 1)
        .iter()
        .any(|&i| !coproduct_clause(coeffs, i).is_zero())
    {
        return;
    }
    if level == ORDER.len() {
        stats.full_assignments += 1;
        let Ok(images) = coeffs.images(tables) else { return };
        if !relation_violations(&images, tables).is_empty() {
            stats.relation_rejects += 1;
            return;
        }
        let g = from_generator_images(&images, tables);
        if !verify_hopf_morphism_with(&g.map, tables, hopf, Exec::Sequential).all_hold() {
            stats.verification_rejects += 1;
            return;
        }
        stats.verified += 1;
        if residuals(coeffs, tables.params()).relation_clauses().any(|r| !r.value.is_zero()) {
            stats.relation_clause_false_rejections += 1;
        }
        hits.push(SearchHit {
            coefficients: coeffs.clone(),
            map: g.map,
        });
        return;
    }
    for v in grid {
        *coeffs.get_mut(ORDER[level]) = v.clone();
        descend(tables, hopf, grid, coeffs, level + 1, stats, hits);
    }
}

/// Search result set compared with the classified maps.
#[derive(Debug, Clone, Serialize)]
pub struct SearchComparison {
    pub search_count: usize,
    pub classified_count: usize,
    pub classified_missing_from_search: usize,
    pub search_not_classified: usize,
    pub equal: bool,
}

pub fn compare_search(search: &SearchReport, classified: &[LinearMap]) -> SearchComparison {
    let found: Vec<&LinearMap> = search.hits.iter().map(|h| &h.map).collect();
    let missing = classified.iter().filter(|m| !found.contains(m)).count();
    let extra = found.iter().filter(|m| !classified.contains(m)).count();
    SearchComparison {
        search_count: found.len(),
        classified_count: classified.len(),
        classified_missing_from_search: missing,
        search_not_classified: extra,
        equal: missing == 0 && extra == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_structure_tables;
    use crate::hopf::build_hopf_tables;

    fn setup(big_n: u32, n: u32, mu: Sign, lambda: Sign) -> (StructureTables, HopfTables) {
        let t = build_structure_tables(&AlgebraParams::new(big_n, n, mu, lambda).unwrap());
        let h = build_hopf_tables(&t);
        (t, h)
    }

    #[test]
    fn psi_mu_n1_is_identity() {
        for mu in [Sign::Plus, Sign::Minus] {
            let (t, _) = setup(2, 3, mu, Sign::Minus);
            let g = make_psi(2, 1, t.num(mu.as_i64()), &t).unwrap();
            assert!(g.map.is_identity(&t));
        }
    }

    #[test]
    fn condition_examples() {
        let p = AlgebraParams::new(2, 3, Sign::Plus, Sign::Plus).unwrap();
        let ctx = p.field();
        let one = CycNumber::one(&ctx);
        assert!(!conditions_hold(&AutDescriptor::psi(1, 2, one.clone()), &p));
        assert!(conditions_hold(&AutDescriptor::psi(1, 1, -&one), &p));
        let q = AlgebraParams::new(1, 2, Sign::Minus, Sign::Plus).unwrap();
        assert!(!conditions_hold(&AutDescriptor::gamma(Sign::Plus, Sign::Plus, 1), &q));
    }

    #[test]
    fn phi_with_even_half_t_fails() {
        let (t, h) = setup(1, 4, Sign::Plus, Sign::Plus);
        let d = AutDescriptor::phi(1, 2, t.one());
        let (r, _) = verify_descriptor(&d, &t, &h, Exec::Sequential).unwrap();
        assert!(!r.verified);
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn gamma_pattern_has_zero_residuals() {
        let (t, _) = setup(1, 2, Sign::Plus, Sign::Plus);
        for th1 in [Sign::Plus, Sign::Minus] {
            for th2 in [Sign::Plus, Sign::Minus] {
                let g = make_gamma(th1, th2, 1, &t).unwrap();
                let c = AnsatzCoefficients::from_map(&g.map, &t).unwrap();
                assert_eq!(c.a[0], t.ratio(1, 2));
                assert!(residuals(&c, t.params()).is_zero(), "{:?}", residuals(&c, t.params()).nonzero());
            }
        }
    }

    // the coproduct clauses are exactly the coordinates of
    // Δφ(x) - (φ⊗φ)Δ(x) for x = x11, x12 in the basis u_i ⊗ u_j
    #[test]
    fn coproduct_clauses_match_direct_computation() {
        use crate::algebra::Generator;
        use crate::hopf::TensorElement;
        let (t, h) = setup(1, 3, Sign::Plus, Sign::Minus);
        let vals = [3i64, -2, 5, 7, -11, 13, 17, -19, 23, 29, -31, 37];
        for shift in 0..4 {
            let mut c = AnsatzCoefficients {
                s: 1,
                t: 1,
                a: [t.num(0), t.num(0), t.num(0)],
                b: [t.num(0), t.num(0), t.num(0)],
                d: [t.num(0), t.num(0), t.num(0)],
                e: [t.num(0), t.num(0), t.num(0)],
            };
            for k in 0..12 {
                *c.get_mut(k) = t.ratio(vals[(k + shift) % 12], 1 + shift as i64);
            }
            let images = c.images(&t).unwrap();
            let img = |g: Generator| images[g as usize].clone();
            let mut coords: Vec<CycNumber> = Vec::new();
            for (x, pairs) in [
                (Generator::X11, [(Generator::X11, Generator::X11), (Generator::X12, Generator::X21)]),
                (Generator::X12, [(Generator::X11, Generator::X12), (Generator::X12, Generator::X22)]),
            ] {
                let mut diff = h.coproduct(&t, &img(x));
                for (l, r) in pairs {
                    diff.add_scaled(&TensorElement::tensor(&img(l), &img(r)), &t.num(-1));
                }
                coords.extend(diff.terms().map(|(_, v)| v.clone()));
            }
            let res: Vec<CycNumber> = coproduct_residuals(&c).into_iter().map(|r| r.value).collect();
            for v in &coords {
                assert!(res.iter().any(|r| r == v || *r == -v), "{v} not among clauses");
            }
            for r in &res {
                assert!(coords.iter().any(|v| r == v || *r == -v), "{r} not among coordinates");
            }
        }
    }
}
