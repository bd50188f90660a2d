//! Finite self-distributive structures: shelves, racks, spindles, quandles,
//! together with X-sets acting as coefficient systems.
//!
//! Elements are the integers `0..n`; `x ◁ y` (exponential notation `x^y`)
//! is `table[x][y]` throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// A finite shelf: a set `{0..size-1}` with a self-distributive operation,
/// classified on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteShelf {
    pub size: usize,
    /// `table[x][y] = x ◁ y`
    pub table: Vec<Vec<usize>>,
    #[serde(skip)]
    pub is_shelf: bool,
    #[serde(skip)]
    pub is_rack: bool,
    #[serde(skip)]
    pub is_spindle: bool,
    #[serde(skip)]
    pub is_quandle: bool,
}

impl FiniteShelf {
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Iterated right action: `x ◁ w[0] ◁ w[1] ◁ …`
    pub fn act_word(&self, x: usize, word: &[usize]) -> usize {
        word.iter().fold(x, |a, &y| self.act(a, y))
    }

    pub fn require_rack(&self, op: &'static str) -> Result<()> {
        if self.is_rack {
            return Ok(());
        }
        let column = (0..self.size)
            .find(|&y| {
                let mut seen = vec![false; self.size];
                (0..self.size).any(|x| std::mem::replace(&mut seen[self.table[x][y]], true))
            })
            .unwrap_or(0);
        Err(Error::RackRequired { op, column })
    }

    pub fn require_spindle(&self, op: &'static str) -> Result<()> {
        match (0..self.size).find(|&x| self.act(x, x) != x) {
            None => Ok(()),
            Some(x) => Err(Error::SpindleRequired {
                op,
                x,
                image: self.act(x, x),
            }),
        }
    }
}

/// Classify a binary-operation table. Flags are set by exhaustive checks; a
/// failed shelf axiom reports the lexicographically first witness triple.
pub fn classify(table: Vec<Vec<usize>>) -> Result<FiniteShelf> {
    let n = table.len();
    if table.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            context: format!("shelf table must be {n}x{n}"),
        });
    }
    for (row, r) in table.iter().enumerate() {
        for (col, &v) in r.iter().enumerate() {
            if v >= n {
                return Err(Error::EntryOutOfRange {
                    row,
                    col,
                    value: v,
                    size: n,
                });
            }
        }
    }
    // Exhaustive triples in lexicographic order; parallel chunks keep the
    // first witness deterministic.
    let witness = par::find_first(n * n * n, |k| {
        let x = k / (n * n);
        let y = (k / n) % n;
        let z = k % n;
        let lhs = table[table[x][y]][z];
        let rhs = table[table[x][z]][table[y][z]];
        if lhs != rhs {
            Some(Error::NotSelfDistributive { x, y, z, lhs, rhs })
        } else {
            None
        }
    });
    if let Some(err) = witness {
        return Err(err);
    }
    let is_rack = (0..n).all(|y| {
        let mut seen = vec![false; n];
        (0..n).all(|x| !std::mem::replace(&mut seen[table[x][y]], true))
    });
    let is_spindle = (0..n).all(|x| table[x][x] == x);
    Ok(FiniteShelf {
        size: n,
        table,
        is_shelf: true,
        is_rack,
        is_spindle,
        is_quandle: is_rack && is_spindle,
    })
}

/// Builtin families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `x ◁ y = (2y - x) mod n`
    Dihedral(usize),
    /// `x ◁ y = x`
    Trivial(usize),
    /// `x ◁ y = perm(x)`
    Permutation(Vec<usize>),
    /// `x ◁ y = y⁻¹ x y` in the group given by its multiplication table
    Conjugation(Vec<Vec<usize>>),
}

pub fn builtin(family: Family) -> Result<FiniteShelf> {
    match family {
        Family::Dihedral(n) => {
            assert!(n > 0, "dihedral size must be positive");
            classify(
                (0..n)
                    .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
                    .collect(),
            )
        }
        Family::Trivial(n) => {
            assert!(n > 0, "trivial size must be positive");
            classify((0..n).map(|x| vec![x; n]).collect())
        }
        Family::Permutation(perm) => {
            let n = perm.len();
            let mut seen = vec![false; n];
            for &v in &perm {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAPermutation { size: n, value: v });
                }
            }
            classify((0..n).map(|x| vec![perm[x]; n]).collect())
        }
        Family::Conjugation(mul) => {
            let n = mul.len();
            validate_group(&mul)?;
            let e = identity_of(&mul).expect("validated group has an identity");
            let inv = |y: usize| (0..n).find(|&t| mul[t][y] == e).expect("validated group");
            classify(
                (0..n)
                    .map(|x| (0..n).map(|y| mul[mul[inv(y)][x]][y]).collect())
                    .collect(),
            )
        }
    }
}

fn identity_of(mul: &[Vec<usize>]) -> Option<usize> {
    let n = mul.len();
    (0..n).find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
}

fn validate_group(mul: &[Vec<usize>]) -> Result<()> {
    let n = mul.len();
    if n == 0 || mul.iter().any(|row| row.len() != n) {
        return Err(Error::NotAGroup {
            reason: "multiplication table is not square and nonempty".into(),
        });
    }
    for row in mul {
        for &v in row {
            if v >= n {
                return Err(Error::NotAGroup {
                    reason: format!("entry {v} out of range 0..{n}"),
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                    return Err(Error::NotAGroup {
                        reason: format!("associativity fails at ({x},{y},{z})"),
                    });
                }
            }
        }
    }
    let e = match identity_of(mul) {
        Some(e) => e,
        None => {
            return Err(Error::NotAGroup {
                reason: "no two-sided identity".into(),
            })
        }
    };
    for x in 0..n {
        if !(0..n).any(|y| mul[x][y] == e && mul[y][x] == e) {
            return Err(Error::NotAGroup {
                reason: format!("element {x} has no inverse"),
            });
        }
    }
    Ok(())
}

/// Orbits of the group generated by the right translations `- ◁ y`.
/// Requires a rack so the translations are invertible.
pub fn orbits(shelf: &FiniteShelf) -> Result<Vec<Vec<usize>>> {
    shelf.require_rack("orbits")?;
    let n = shelf.size;
    let mut repr: Vec<usize> = (0..n).collect();
    fn find(repr: &mut Vec<usize>, x: usize) -> usize {
        if repr[x] != x {
            let r = find(repr, repr[x]);
            repr[x] = r;
        }
        repr[x]
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut repr, x), find(&mut repr, shelf.act(x, y)));
            if a != b {
                repr[a.max(b)] = a.min(b);
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut repr, x);
        if index[r] == usize::MAX {
            index[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[index[r]].push(x);
    }
    Ok(parts)
}

/// An X-set: a set `{0..size-1}` with an action `s ◀ y` compatible with the
/// shelf operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XSetAction {
    pub size: usize,
    /// `action[s][y] = s ◀ y`
    pub action: Vec<Vec<usize>>,
}

/// Exhaustively check `(s ◀ y) ◀ z = (s ◀ z) ◀ (y ◁ z)`.
pub fn validate_xset(shelf: &FiniteShelf, action: Vec<Vec<usize>>) -> Result<XSetAction> {
    let m = action.len();
    let n = shelf.size;
    if m == 0 || action.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            context: format!("X-set action must be m x {n} with m > 0"),
        });
    }
    for (row, r) in action.iter().enumerate() {
        for (col, &v) in r.iter().enumerate() {
            if v >= m {
                return Err(Error::EntryOutOfRange {
                    row,
                    col,
                    value: v,
                    size: m,
                });
            }
        }
    }
    let witness = par::find_first(m * n * n, |k| {
        let s = k / (n * n);
        let y = (k / n) % n;
        let z = k % n;
        let lhs = action[action[s][y]][z];
        let rhs = action[action[s][z]][shelf.act(y, z)];
        if lhs != rhs {
            Some(Error::XSetAxiomFails { s, y, z, lhs, rhs })
        } else {
            None
        }
    });
    match witness {
        Some(err) => Err(err),
        None => Ok(XSetAction { size: m, action }),
    }
}

/// Coefficient system for the chain complexes: the trivial one-point action,
/// the shelf acting on itself, or an arbitrary validated X-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSystem {
    Trivial,
    SelfAction,
    XSet(XSetAction),
}

impl CoefficientSystem {
    pub fn size(&self, shelf: &FiniteShelf) -> usize {
        match self {
            CoefficientSystem::Trivial => 1,
            CoefficientSystem::SelfAction => shelf.size,
            CoefficientSystem::XSet(xs) => xs.size,
        }
    }

    /// `s ◀ y`
    pub fn act(&self, shelf: &FiniteShelf, s: usize, y: usize) -> usize {
        match self {
            CoefficientSystem::Trivial => s,
            CoefficientSystem::SelfAction => shelf.act(s, y),
            CoefficientSystem::XSet(xs) => xs.action[s][y],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientSystem::Trivial => "trivial".into(),
            CoefficientSystem::SelfAction => "self".into(),
            CoefficientSystem::XSet(xs) => format!("xset(size {})", xs.size),
        }
    }
}

/// The remarkable map
/// `(x₁,…,xₙ) ↦ (x₁^{x₂⋯xₙ}, x₂^{x₃⋯xₙ}, …, xₙ)`,
/// a bijection on `X^n` whenever the shelf is a rack.
pub fn remarkable_map(shelf: &FiniteShelf, tuple: &[usize]) -> Vec<usize> {
    (0..tuple.len())
        .map(|i| shelf.act_word(tuple[i], &tuple[i + 1..]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dihedral(n: usize) -> FiniteShelf {
        builtin(Family::Dihedral(n)).unwrap()
    }

    #[test]
    fn dihedral_3_is_a_quandle() {
        let s = dihedral(3);
        assert_eq!(s.table, vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert!(s.is_shelf && s.is_rack && s.is_spindle && s.is_quandle);
    }

    #[test]
    fn swap_shelf_is_rack_not_spindle() {
        // x ◁ y = 1 - x on {0,1}
        let s = classify(vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert!(s.is_shelf && s.is_rack);
        assert!(!s.is_spindle && !s.is_quandle);
    }

    #[test]
    fn failure_witness_is_lexicographically_first() {
        // x ◁ y = NOT(x XOR y) on {0,1}
        let err = classify(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::NotSelfDistributive {
                x: 0,
                y: 0,
                z: 0,
                lhs: 0,
                rhs: 1
            }
        );
    }

    #[test]
    fn out_of_range_entry_is_reported_with_cell() {
        let err = classify(vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                size: 2
            }
        );
    }

    #[test]
    fn classify_is_idempotent() {
        for s in [
            dihedral(3),
            dihedral(4),
            builtin(Family::Trivial(2)).unwrap(),
            builtin(Family::Permutation(vec![1, 0])).unwrap(),
        ] {
            let again = classify(s.table.clone()).unwrap();
            assert_eq!(s, again);
            assert_eq!(
                (s.is_shelf, s.is_rack, s.is_spindle, s.is_quandle),
                (again.is_shelf, again.is_rack, again.is_spindle, again.is_quandle)
            );
        }
    }

    #[test]
    fn builtin_families() {
        let perm = builtin(Family::Permutation(vec![1, 0])).unwrap();
        assert!(perm.is_rack && !perm.is_spindle);
        let single = builtin(Family::Trivial(1)).unwrap();
        assert!(single.is_quandle);
        assert_eq!(single.act(0, 0), 0);
        assert!(matches!(
            builtin(Family::Permutation(vec![0, 0])),
            Err(Error::NotAPermutation { .. })
        ));
    }

    #[test]
    fn conjugation_of_s3_is_a_quandle() {
        // Symmetric group on 3 letters, elements enumerated as
        // e, (12), (13), (23), (123), (132) via composition.
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
            (0..3).map(|i| a[b[i]]).collect()
        };
        let mul: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| perms.iter().position(|c| *c == compose(a, b)).unwrap())
                    .collect()
            })
            .collect();
        let q = builtin(Family::Conjugation(mul)).unwrap();
        assert!(q.is_quandle);
    }

    #[test]
    fn conjugation_rejects_non_groups() {
        let err = builtin(Family::Conjugation(vec![vec![0, 0], vec![0, 0]])).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
    }

    #[test]
    fn orbits_refuse_non_racks() {
        // x ◁ y = 0 is a shelf but not a rack for n >= 2
        let constant = classify(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(constant.is_shelf && !constant.is_rack);
        assert!(matches!(
            orbits(&constant),
            Err(Error::RackRequired { op: "orbits", .. })
        ));
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbits(&dihedral(3)).unwrap().len(), 1);
        assert_eq!(orbits(&builtin(Family::Trivial(2)).unwrap()).unwrap().len(), 2);
        assert_eq!(
            orbits(&builtin(Family::Permutation(vec![1, 0])).unwrap())
                .unwrap()
                .len(),
            1
        );
        for n in 2..=8 {
            let expect = if n % 2 == 1 { 1 } else { 2 };
            assert_eq!(orbits(&dihedral(n)).unwrap().len(), expect, "dihedral({n})");
        }
    }

    #[test]
    fn xset_examples() {
        let d3 = dihedral(3);
        // The shelf acting on itself is always a valid X-set.
        assert!(validate_xset(&d3, d3.table.clone()).is_ok());
        // One-point set with the trivial action.
        assert!(validate_xset(&d3, vec![vec![0, 0, 0]]).is_ok());
        // A two-point candidate over dihedral(3), checked exhaustively.
        let out = validate_xset(&d3, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        match out {
            Ok(_) => {}
            Err(Error::XSetAxiomFails { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn self_action_is_valid_iff_shelf() {
        let d4 = dihedral(4);
        assert!(validate_xset(&d4, d4.table.clone()).is_ok());
    }

    #[test]
    fn remarkable_map_examples() {
        let d3 = dihedral(3);
        assert_eq!(remarkable_map(&d3, &[0]), vec![0]);
        assert_eq!(remarkable_map(&d3, &[0, 1]), vec![2, 1]);
        assert_eq!(remarkable_map(&d3, &[0, 1, 2]), vec![2, 0, 2]);
        assert_eq!(remarkable_map(&d3, &[]), Vec::<usize>::new());
    }

    #[test]
    fn remarkable_map_is_a_bijection_for_racks() {
        use std::collections::HashSet;
        for shelf in [dihedral(3), builtin(Family::Permutation(vec![1, 0])).unwrap()] {
            for n in 1..=3usize {
                let mut images = HashSet::new();
                let total = shelf.size.pow(n as u32);
                for k in 0..total {
                    let tuple: Vec<usize> = (0..n)
                        .map(|i| (k / shelf.size.pow((n - 1 - i) as u32)) % shelf.size)
                        .collect();
                    images.insert(remarkable_map(&shelf, &tuple));
                }
                assert_eq!(images.len(), total);
            }
        }
    }
}
