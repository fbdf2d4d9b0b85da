//! Brute-force ground truth for the normal form.
//!
//! Words in one family are encoded as `Vec<bool>` (`false` = the leading
//! letter `x11`/`x12`, `true` = `x22`/`x21`). Every defining relation is
//! applied as an undirected edge between words of bounded length, with a
//! sign, and a union-find with sign parity collects the equivalence classes.
//! A word's value is read off the unique basis word in its class.

#![allow(dead_code)]

use std::collections::HashMap;

use suzuki_hopf::{AlgebraParams, BasisIndex, Family, Generator, Sign};

pub struct Classes {
    index: HashMap<Vec<bool>, usize>,
    parent: Vec<usize>,
    // sign of a node relative to its parent
    parity: Vec<bool>,
    conflicted: Vec<bool>,
}

impl Classes {
    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    // record a = (-1)^negative · b
    fn union(&mut self, a: usize, b: usize, negative: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != negative {
                self.conflicted[ra] = true;
            }
            return;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ negative;
        self.conflicted[rb] |= self.conflicted[ra];
    }
}

fn all_words(max_len: usize) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for b in [false, true] {
                let mut v: Vec<bool> = w.clone();
                v.push(b);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn alternating(start: bool, len: usize) -> Vec<bool> {
    (0..len).map(|k| start ^ (k % 2 == 1)).collect()
}

/// Equivalence classes of nonempty words of one family up to length `max_len`.
pub fn build_classes(params: &AlgebraParams, family: Family, max_len: usize) -> Classes {
    let words: Vec<Vec<bool>> = all_words(max_len).into_iter().filter(|w| !w.is_empty()).collect();
    let index: HashMap<Vec<bool>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let count = words.len();
    let mut classes = Classes {
        index,
        parent: (0..count).collect(),
        parity: vec![false; count],
        conflicted: vec![false; count],
    };
    let n = params.n as usize;
    let fold = 2 * params.big_n as usize;
    let odd = family == Family::O;
    let braid_negative = odd && params.lambda == Sign::Minus;
    let fold_negative = odd && params.mu == Sign::Minus;
    let from_q = alternating(true, n);
    let from_p = alternating(false, n);

    for w in &words {
        let id = classes.index[w];
        // pp = qq
        for i in 0..w.len().saturating_sub(1) {
            if !w[i] && !w[i + 1] {
                let mut v = w.clone();
                v[i] = true;
                v[i + 1] = true;
                let j = classes.index[&v];
                classes.union(id, j, false);
            }
        }
        // the alternating word of length n starting at q equals c times the
        // one starting at p
        if w.len() >= n {
            for i in 0..=w.len() - n {
                if w[i..i + n] == from_q[..] {
                    let mut v = w.clone();
                    v[i..i + n].copy_from_slice(&from_p);
                    let j = classes.index[&v];
                    classes.union(id, j, braid_negative);
                }
            }
        }
        // p^{2N} inserted anywhere into a nonempty word
        if w.len() + fold <= max_len {
            for i in 0..=w.len() {
                let mut v = w[..i].to_vec();
                v.extend(std::iter::repeat_n(false, fold));
                v.extend_from_slice(&w[i..]);
                let j = classes.index[&v];
                classes.union(j, id, fold_negative);
            }
        }
    }
    classes
}

/// What the oracle says a word equals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleValue {
    Zero,
    Unit,
    Term(BasisIndex, Sign),
    /// The bounded search found no basis word (or several) in the class.
    Unresolved,
}

fn basis_word(s: usize, t: usize) -> Vec<bool> {
    let mut w = vec![false; s];
    w.extend(alternating(true, t));
    w
}

pub struct Oracle {
    params: AlgebraParams,
    even: Classes,
    odd: Classes,
}

impl Oracle {
    pub fn new(params: AlgebraParams, max_input: usize) -> Oracle {
        let big_n = params.big_n as usize;
        let n = params.n as usize;
        let max_len = max_input.max(2 * big_n + n - 1) + 2 * big_n + 2;
        Oracle {
            params,
            even: build_classes(&params, Family::E, max_len),
            odd: build_classes(&params, Family::O, max_len),
        }
    }

    pub fn evaluate(&mut self, letters: &[Generator]) -> OracleValue {
        if letters.is_empty() {
            return OracleValue::Unit;
        }
        let family = if matches!(letters[0], Generator::X11 | Generator::X22) {
            Family::E
        } else {
            Family::O
        };
        let in_family = |g: Generator| match family {
            Family::E => matches!(g, Generator::X11 | Generator::X22),
            Family::O => matches!(g, Generator::X12 | Generator::X21),
        };
        if !letters.iter().all(|&g| in_family(g)) {
            // some adjacent pair changes family, which kills the word
            return OracleValue::Zero;
        }
        let word: Vec<bool> = letters
            .iter()
            .map(|g| matches!(g, Generator::X22 | Generator::X21))
            .collect();
        let big_n = self.params.big_n as usize;
        let n = self.params.n as usize;
        let classes = match family {
            Family::E => &mut self.even,
            Family::O => &mut self.odd,
        };
        let Some(&id) = classes.index.get(&word) else {
            return OracleValue::Unresolved;
        };
        let (root, par) = classes.find(id);
        if classes.conflicted[root] {
            return OracleValue::Zero;
        }
        let mut found = Vec::new();
        for s in 1..=2 * big_n {
            for t in 0..n {
                let b = classes.index[&basis_word(s, t)];
                let (rb, pb) = classes.find(b);
                if rb == root {
                    found.push((s, t, pb));
                }
            }
        }
        match found.as_slice() {
            [(s, t, pb)] => {
                let sign = if par ^ pb { Sign::Minus } else { Sign::Plus };
                OracleValue::Term(BasisIndex::new(family, *s as u32, *t as u32), sign)
            }
            _ => OracleValue::Unresolved,
        }
    }
}

/// Every word of length at most `max_len` over the four generators.
pub fn generator_words(max_len: usize) -> Vec<Vec<Generator>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in Generator::ALL {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn sign_of(v: i8) -> Sign {
    if v > 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// All `(N, n, μ, λ)` with `N ≤ max_big_n`, `n` in `ns`.
pub fn grid(max_big_n: u32, ns: &[u32]) -> Vec<AlgebraParams> {
    let mut out = Vec::new();
    for big_n in 1..=max_big_n {
        for &n in ns {
            for mu in [Sign::Plus, Sign::Minus] {
                for lambda in [Sign::Plus, Sign::Minus] {
                    out.push(AlgebraParams::new(big_n, n, mu, lambda).expect("valid"));
                }
            }
        }
    }
    out
}
