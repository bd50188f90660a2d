//! Rack chain and cochain complexes `C_n(X, R)` for trivial, self, and X-set
//! coefficients: cubical face maps, boundary matrices, homology tables, and
//! cocycle bases.
//!
//! Basis order is lexicographic on `(coeff_index, tuple)` so every matrix and
//! fixture is reproducible.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{self, HomologyGroup, IntMatrix};
use crate::modp::ModMatrix;
use crate::par;
use crate::products::Cochain;
use crate::shelf::{CoefficientSystem, FiniteShelf};

/// Default cap on the size of a chain basis before computations refuse.
pub const DEFAULT_BASIS_CAP: usize = 20_000;

/// A basis element of `C_n(X, ZS)`: a coefficient index and an n-tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainBasisElement {
    pub coeff: usize,
    pub tuple: Vec<usize>,
}

impl ChainBasisElement {
    pub fn degree(&self) -> usize {
        self.tuple.len()
    }
}

/// A homogeneous sparse integer chain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain {
    pub degree: usize,
    pub terms: BTreeMap<ChainBasisElement, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, b: ChainBasisElement, c: BigInt) {
        debug_assert_eq!(b.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Number of basis elements of `C_n(X, R)`, refusing past the cap.
pub fn basis_size(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    n: usize,
    cap: usize,
) -> Result<usize> {
    let mut size = coeff.size(shelf);
    for _ in 0..n {
        size = size.saturating_mul(shelf.size);
        if size > cap {
            return Err(Error::ResourceCap {
                degree: n,
                size,
                cap,
            });
        }
    }
    Ok(size)
}

/// Basis element at `index` in the lexicographic order on (coeff, tuple).
pub fn basis_element(shelf: &FiniteShelf, n: usize, index: usize) -> ChainBasisElement {
    let mut rest = index;
    let mut tuple = vec![0usize; n];
    for i in (0..n).rev() {
        tuple[i] = rest % shelf.size;
        rest /= shelf.size;
    }
    ChainBasisElement { coeff: rest, tuple }
}

/// Index of a basis element in the lexicographic order.
pub fn basis_index(shelf: &FiniteShelf, b: &ChainBasisElement) -> usize {
    let mut idx = b.coeff;
    for &x in &b.tuple {
        idx = idx * shelf.size + x;
    }
    idx
}

/// Cubical face maps `δ_i^0` and `δ_i^1` (1-based `i`). Side 0 deletes
/// position `i`; side 1 also acts by `◁ x_i` on the letters left of `i` and
/// by `◀ x_i` on the coefficient.
pub fn face(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    side: u8,
    i: usize,
    b: &ChainBasisElement,
) -> Result<ChainBasisElement> {
    let n = b.degree();
    if i == 0 || i > n {
        return Err(Error::DegreeUnsupported {
            op: "face index out of range",
            degree: i,
        });
    }
    let xi = b.tuple[i - 1];
    let mut tuple = Vec::with_capacity(n - 1);
    match side {
        0 => {
            tuple.extend_from_slice(&b.tuple[..i - 1]);
            tuple.extend_from_slice(&b.tuple[i..]);
            Ok(ChainBasisElement {
                coeff: b.coeff,
                tuple,
            })
        }
        1 => {
            for &x in &b.tuple[..i - 1] {
                tuple.push(shelf.act(x, xi));
            }
            tuple.extend_from_slice(&b.tuple[i..]);
            Ok(ChainBasisElement {
                coeff: coeff.act(shelf, b.coeff, xi),
                tuple,
            })
        }
        _ => Err(Error::DegreeUnsupported {
            op: "face side must be 0 or 1",
            degree: side as usize,
        }),
    }
}

/// Boundary of a basis element: `∂ = Σ (-1)^{i-1} (δ_i^0 - δ_i^1)`.
pub fn boundary_of_basis(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    b: &ChainBasisElement,
) -> Chain {
    let n = b.degree();
    let mut out = Chain::zero(n.saturating_sub(1));
    if n == 0 {
        return out;
    }
    for i in 1..=n {
        let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
        let f0 = face(shelf, coeff, 0, i, b).expect("index in range");
        let f1 = face(shelf, coeff, 1, i, b).expect("index in range");
        out.add_term(f0, BigInt::from(sign));
        out.add_term(f1, BigInt::from(-sign));
    }
    out
}

/// Boundary of a sparse chain.
pub fn boundary_of_chain(shelf: &FiniteShelf, coeff: &CoefficientSystem, c: &Chain) -> Chain {
    let mut out = Chain::zero(c.degree.saturating_sub(1));
    for (b, v) in &c.terms {
        for (fb, fv) in boundary_of_basis(shelf, coeff, b).terms {
            out.add_term(fb, fv * v);
        }
    }
    out
}

/// The boundary `∂_n : C_n → C_{n-1}` as a matrix, columns indexed by the
/// lexicographic basis of `C_n`. Assembly is parallel over columns.
pub fn boundary_matrix(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    n: usize,
    cap: usize,
) -> Result<IntMatrix> {
    let cols = basis_size(shelf, coeff, n, cap)?;
    if n == 0 {
        return Ok(IntMatrix::zero(0, cols));
    }
    let rows = basis_size(shelf, coeff, n - 1, cap)?;
    let columns: Vec<Vec<(usize, BigInt)>> = par::map_indexed(cols, |j| {
        let b = basis_element(shelf, n, j);
        boundary_of_basis(shelf, coeff, &b)
            .terms
            .into_iter()
            .map(|(fb, v)| (basis_index(shelf, &fb), v))
            .collect()
    });
    let mut m = IntMatrix::zero(rows, cols);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Homology (or cohomology, when `dual`) of the complex in degrees
/// `0..=max_n`, over ℤ or over F_p when a modulus is given.
pub fn homology_table(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    max_n: usize,
    dual: bool,
    modulus: Option<u64>,
    cap: usize,
) -> Result<Vec<HomologyGroup>> {
    let mut matrices = Vec::with_capacity(max_n + 2);
    for n in 0..=max_n + 1 {
        matrices.push(boundary_matrix(shelf, coeff, n, cap)?);
    }
    let mut table = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let group = if dual {
            // H^n = Ker(∂_{n+1}ᵀ) / Im(∂_nᵀ) on the graded dual complex
            exactlin::homology_of_pair(
                &matrices[n + 1].transpose(),
                &matrices[n].transpose(),
                modulus,
            )?
        } else {
            exactlin::homology_of_pair(&matrices[n], &matrices[n + 1], modulus)?
        };
        table.push(group);
    }
    Ok(table)
}

/// Basis of `Ker(∂* : Cⁿ → Cⁿ⁺¹)`, as cochains.
pub fn cocycle_basis(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    n: usize,
    modulus: Option<u64>,
    cap: usize,
) -> Result<Vec<Cochain>> {
    let dual = boundary_matrix(shelf, coeff, n + 1, cap)?.transpose();
    let coeff_size = coeff.size(shelf);
    let vectors: Vec<Vec<BigInt>> = match modulus {
        None => exactlin::kernel_basis(&dual),
        Some(p) => {
            exactlin::require_prime(p)?;
            ModMatrix::from_int(&dual, p)
                .kernel_basis()
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect()
        }
    };
    Ok(vectors
        .into_iter()
        .map(|values| Cochain {
            degree: n,
            coeff_size,
            shelf_size: shelf.size,
            modulus,
            values,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shelf::{builtin, Family};

    fn d3() -> FiniteShelf {
        builtin(Family::Dihedral(3)).unwrap()
    }

    fn el(tuple: &[usize]) -> ChainBasisElement {
        ChainBasisElement {
            coeff: 0,
            tuple: tuple.to_vec(),
        }
    }

    #[test]
    fn face_instances() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        // δ₂¹(0,1,2) = (0◁1, 2) = (2,2)
        let out = face(&shelf, &t, 1, 2, &el(&[0, 1, 2])).unwrap();
        assert_eq!(out.tuple, vec![2, 2]);
        // δ₁⁰ = δ₁¹ on trivial coefficients
        let a = face(&shelf, &t, 0, 1, &el(&[0, 1, 2])).unwrap();
        let b = face(&shelf, &t, 1, 1, &el(&[0, 1, 2])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tuple, vec![1, 2]);
        assert!(face(&shelf, &t, 0, 4, &el(&[0, 1, 2])).is_err());
    }

    #[test]
    fn cube_identity_instance() {
        // δ₁¹ δ₃⁰ = δ₂⁰ δ₁¹ on (0,1,2)
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        let b = el(&[0, 1, 2]);
        let lhs = face(&shelf, &t, 1, 1, &face(&shelf, &t, 0, 3, &b).unwrap()).unwrap();
        let rhs = face(&shelf, &t, 0, 2, &face(&shelf, &t, 1, 1, &b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_in_low_degree() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        for x in 0..3 {
            assert!(boundary_of_basis(&shelf, &t, &el(&[x])).is_zero());
        }
        let b = boundary_of_basis(&shelf, &t, &el(&[0, 1]));
        let mut expect = Chain::zero(1);
        expect.add_term(el(&[2]), BigInt::from(1));
        expect.add_term(el(&[0]), BigInt::from(-1));
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_squared_vanishes() {
        let shelf = d3();
        for coeff in [CoefficientSystem::Trivial, CoefficientSystem::SelfAction] {
            for n in 0..=4usize {
                let size = basis_size(&shelf, &coeff, n, DEFAULT_BASIS_CAP).unwrap();
                for idx in 0..size {
                    let b = basis_element(&shelf, n, idx);
                    let db = boundary_of_basis(&shelf, &coeff, &b);
                    assert!(boundary_of_chain(&shelf, &coeff, &db).is_zero());
                }
            }
        }
    }

    #[test]
    fn self_coefficient_boundary_matches_specialization() {
        // the Eq-with-coefficients boundary for R = ZX sends (r; x) to
        // (r;) - (r◁x;)
        let shelf = d3();
        let coeff = CoefficientSystem::SelfAction;
        let b = ChainBasisElement {
            coeff: 0,
            tuple: vec![1],
        };
        let db = boundary_of_basis(&shelf, &coeff, &b);
        let mut expect = Chain::zero(0);
        expect.add_term(
            ChainBasisElement {
                coeff: 0,
                tuple: vec![],
            },
            BigInt::from(1),
        );
        expect.add_term(
            ChainBasisElement {
                coeff: shelf.act(0, 1),
                tuple: vec![],
            },
            BigInt::from(-1),
        );
        assert_eq!(db, expect);
    }

    #[test]
    fn basis_indexing_round_trips() {
        let shelf = d3();
        let coeff = CoefficientSystem::SelfAction;
        let n = 2;
        let size = basis_size(&shelf, &coeff, n, DEFAULT_BASIS_CAP).unwrap();
        for idx in 0..size {
            let b = basis_element(&shelf, n, idx);
            assert_eq!(basis_index(&shelf, &b), idx);
        }
    }

    #[test]
    fn homology_of_trivial_coefficients_low_degrees() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        let table = homology_table(&shelf, &t, 1, false, None, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(table[0], HomologyGroup::free(1));
        assert_eq!(table[1], HomologyGroup::free(1));
    }

    #[test]
    fn rank_of_boundary_2_matches_orbit_count() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        let m = boundary_matrix(&shelf, &t, 2, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(m.rank(None).unwrap(), shelf.size - 1);
    }

    #[test]
    fn cocycle_basis_low_degree() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        let z1 = cocycle_basis(&shelf, &t, 1, None, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(z1.len(), 1);
        let z1_t2 = cocycle_basis(
            &builtin(Family::Trivial(2)).unwrap(),
            &t,
            1,
            None,
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_eq!(z1_t2.len(), 2);
    }

    #[test]
    fn resource_cap_is_reported() {
        let shelf = d3();
        let t = CoefficientSystem::Trivial;
        let err = homology_table(&shelf, &t, 9, false, None, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }
}
