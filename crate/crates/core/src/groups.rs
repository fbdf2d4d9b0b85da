//! Invariants of finite groups given by Cayley tables, and a catalog of small
//! groups to match them against.

use std::collections::BTreeMap;

use serde::Serialize;

/// Invariants used to tell small groups apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub abelian: bool,
    /// element order → number of elements of that order
    pub element_orders: BTreeMap<usize, usize>,
    pub center_size: usize,
}

impl GroupInvariants {
    /// Computes invariants from `table[i][j] = i·j` with identity `e`.
    pub fn from_table(table: &[Vec<usize>], e: usize) -> GroupInvariants {
        let order = table.len();
        let abelian = (0..order).all(|i| (0..order).all(|j| table[i][j] == table[j][i]));
        let mut element_orders = BTreeMap::new();
        for i in 0..order {
            let mut k = 1;
            let mut x = i;
            while x != e {
                x = table[x][i];
                k += 1;
                if k > order {
                    break;
                }
            }
            *element_orders.entry(k).or_insert(0) += 1;
        }
        let center_size = (0..order)
            .filter(|&i| (0..order).all(|j| table[i][j] == table[j][i]))
            .count();
        GroupInvariants {
            order,
            abelian,
            element_orders,
            center_size,
        }
    }
}

/// A group given by its elements `0..order` and a multiplication closure.
struct Cayley {
    name: String,
    table: Vec<Vec<usize>>,
}

impl Cayley {
    fn build(name: impl Into<String>, order: usize, mul: impl Fn(usize, usize) -> usize) -> Cayley {
        let table = (0..order).map(|i| (0..order).map(|j| mul(i, j)).collect()).collect();
        Cayley {
            name: name.into(),
            table,
        }
    }

    fn identity(&self) -> usize {
        (0..self.table.len())
            .find(|&e| (0..self.table.len()).all(|x| self.table[e][x] == x))
            .expect("groups have an identity")
    }

    fn invariants(&self) -> GroupInvariants {
        GroupInvariants::from_table(&self.table, self.identity())
    }

    fn product(&self, other: &Cayley) -> Cayley {
        let m = other.table.len();
        Cayley::build(
            format!("{} x {}", self.name, other.name),
            self.table.len() * m,
            |x, y| self.table[x / m][y / m] * m + other.table[x % m][y % m],
        )
    }
}

/// `⟨a, b | a^m = 1, b^k = a^l, b a b^{-1} = a^r⟩`, elements `a^i b^j`.
fn metacyclic(name: &str, m: usize, k: usize, l: usize, r: usize) -> Cayley {
    // r^j mod m
    let rpow = |j: usize| (0..j).fold(1 % m, |acc, _| acc * r % m);
    Cayley::build(name, m * k, |x, y| {
        let (i1, j1) = (x / k, x % k);
        let (i2, j2) = (y / k, y % k);
        let mut i = (i1 + rpow(j1) * i2) % m;
        let mut j = j1 + j2;
        if j >= k {
            j -= k;
            i = (i + l) % m;
        }
        i * k + j
    })
}

fn cyclic(m: usize) -> Cayley {
    Cayley::build(format!("C{m}"), m, |x, y| (x + y) % m)
}

fn alternating4() -> Cayley {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        if inversions % 2 == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
    }
    let index = |p: [usize; 4]| perms.iter().position(|q| *q == p).expect("closed");
    Cayley::build("A4", perms.len(), |x, y| {
        let (p, q) = (perms[x], perms[y]);
        index([p[q[0]], p[q[1]], p[q[2]], p[q[3]]])
    })
}

fn catalog() -> Vec<Cayley> {
    let mut out: Vec<Cayley> = (1..=16).map(cyclic).collect();
    // non-cyclic abelian groups of order at most 16
    for (a, b) in [(2, 2), (2, 4), (3, 3), (2, 6), (2, 8), (4, 4)] {
        out.push(cyclic(a).product(&cyclic(b)));
    }
    out.push(cyclic(2).product(&cyclic(2)).product(&cyclic(2)));
    out.push(cyclic(2).product(&cyclic(2)).product(&cyclic(4)));
    out.push(cyclic(2).product(&cyclic(2)).product(&cyclic(2)).product(&cyclic(2)));
    for m in 3..=8 {
        out.push(metacyclic(&format!("D{}", 2 * m), m, 2, 0, m - 1));
    }
    out.push(metacyclic("Q8", 4, 2, 2, 3));
    out.push(metacyclic("Dic12", 6, 2, 3, 5));
    out.push(metacyclic("Q16", 8, 2, 4, 7));
    out.push(metacyclic("SD16", 8, 2, 0, 3));
    out.push(metacyclic("M16", 8, 2, 0, 5));
    out.push(metacyclic("C4 : C4", 4, 4, 0, 3));
    out.push(alternating4());
    let d8 = metacyclic("D8", 4, 2, 0, 3);
    out.push(cyclic(2).product(&d8));
    out.push(cyclic(2).product(&metacyclic("Q8", 4, 2, 2, 3)));
    out
}

/// Catalog groups whose invariants equal `inv`. The catalog covers every
/// group of order at most 15 and part of order 16.
pub fn identify(inv: &GroupInvariants) -> Vec<String> {
    catalog()
        .into_iter()
        .filter(|g| g.table.len() == inv.order && g.invariants() == *inv)
        .map(|g| g.name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_eight_groups_are_told_apart() {
        for g in catalog().iter().filter(|g| g.table.len() == 8) {
            assert_eq!(identify(&g.invariants()), vec![g.name.clone()], "{}", g.name);
        }
    }

    #[test]
    fn catalog_tables_are_groups() {
        for g in catalog() {
            let n = g.table.len();
            let e = g.identity();
            for x in 0..n {
                assert!((0..n).any(|y| g.table[x][y] == e), "{}", g.name);
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(g.table[g.table[x][y]][z], g.table[x][g.table[y][z]], "{}", g.name);
                    }
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let q8 = metacyclic("Q8", 4, 2, 2, 3).invariants();
        assert_eq!(q8.element_orders, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        assert_eq!(q8.center_size, 2);
        assert_eq!(identify(&cyclic(1).invariants()), vec!["C1".to_string()]);
        let v4 = cyclic(2).product(&cyclic(2)).invariants();
        assert!(v4.abelian);
        assert_eq!(v4.element_orders, BTreeMap::from([(1, 1), (2, 3)]));
        assert_eq!(alternating4().invariants().center_size, 1);
    }
}
