//! Cochain-level algebra: the coboundary, the cup product and its dendriform
//! halves, homotopy witnesses for the commutativity and Zinbielity defects,
//! the translation action, coboundary membership, and the induced coproduct
//! on mod-p homology.
//!
//! Cochains evaluate against B̄-valued maps with the Koszul rule
//! `(f ⊗ g)(a ⊗ b) = (-1)^{|g||a|} f(a) g(b)`, and the cochain differential is
//! `d*f = (-1)^{|f|} f∘d`. These two choices reproduce the degree-(1,1)
//! formula `(f⌣g)(e_xe_y) = -f(e_x)g(e_y) + f(e_y)g(e_{x◁y})`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::complex::{self, basis_index, boundary_matrix, boundary_of_basis};
use crate::dgbial::{
    self, coproduct_multiplicative, dendri, homotopy_h, homotopy_hbar, BarElement, BarTensor,
    DendriSide, Tuple,
};
use crate::error::{Error, Result};
use crate::exactlin::{self, IntMatrix};
use crate::modp::ModMatrix;
use crate::shelf::{CoefficientSystem, FiniteShelf};

/// A cochain: a total table on `(coeff index) × X^degree`, valued in ℤ or,
/// when a modulus is present, in F_p (entries stored reduced).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coeff_size: usize,
    pub shelf_size: usize,
    pub modulus: Option<u64>,
    pub values: Vec<BigInt>,
}

impl Cochain {
    pub fn zero(
        degree: usize,
        coeff_size: usize,
        shelf_size: usize,
        modulus: Option<u64>,
    ) -> Self {
        let len = coeff_size * shelf_size.pow(degree as u32);
        Cochain {
            degree,
            coeff_size,
            shelf_size,
            modulus,
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn reduce(&self, v: BigInt) -> BigInt {
        match self.modulus {
            None => v,
            Some(p) => v.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn normalized(mut self) -> Self {
        if let Some(p) = self.modulus {
            let p = BigInt::from(p);
            for v in self.values.iter_mut() {
                *v = v.mod_floor(&p);
            }
        }
        self
    }

    pub fn index_of(&self, coeff: usize, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        let mut idx = coeff;
        for &x in tuple {
            idx = idx * self.shelf_size + x;
        }
        idx
    }

    pub fn set(&mut self, coeff: usize, tuple: &[usize], v: BigInt) {
        let idx = self.index_of(coeff, tuple);
        self.values[idx] = self.reduce(v);
    }

    /// Value on a basis tuple (trivial coefficients).
    pub fn eval_tuple(&self, tuple: &[usize]) -> BigInt {
        if tuple.len() != self.degree {
            return BigInt::zero();
        }
        self.values[self.index_of(0, tuple)].clone()
    }

    /// Value on a homogeneous element of B̄ (trivial coefficients).
    pub fn eval_bar(&self, b: &BarElement) -> BigInt {
        if b.degree != self.degree {
            return BigInt::zero();
        }
        let mut acc = BigInt::zero();
        for (t, c) in &b.terms {
            acc += c * self.eval_tuple(t);
        }
        self.reduce(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.len()), (other.degree, other.len()));
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        out.normalized()
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = &*v * k;
        }
        out.normalized()
    }

    /// JSON table `{"degree": n, "values": {"x1,x2,...": v}}`; zero entries
    /// are omitted. For nontrivial coefficient systems the coefficient index
    /// is prefixed to the key as `"s;x1,x2,..."`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        let per_coeff = self.len_per_coeff();
        for (idx, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let tuple = complex_tuple(self.shelf_size, self.degree, idx % per_coeff);
            let mut key = tuple
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            if self.coeff_size > 1 {
                key = format!("{};{key}", idx / per_coeff);
            }
            map.insert(key, serde_json::json!(v.to_i64().expect("value fits i64")));
        }
        serde_json::json!({ "degree": self.degree, "values": map })
    }

    fn len_per_coeff(&self) -> usize {
        self.shelf_size.pow(self.degree as u32)
    }

    pub fn from_json(
        value: &serde_json::Value,
        shelf_size: usize,
        modulus: Option<u64>,
    ) -> std::result::Result<Cochain, String> {
        let degree = value
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or("cochain JSON needs a numeric \"degree\"")? as usize;
        let table_size = (shelf_size.max(1)).checked_pow(degree.min(64) as u32);
        match table_size {
            Some(s) if s <= 1_000_000 => {}
            _ => {
                return Err(format!(
                    "cochain table of degree {degree} over {shelf_size} elements is too large"
                ))
            }
        }
        let mut out = Cochain::zero(degree, 1, shelf_size, modulus);
        let table = value
            .get("values")
            .and_then(|v| v.as_object())
            .ok_or("cochain JSON needs an object \"values\"")?;
        for (key, v) in table {
            let tuple: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|e| e.to_string()))
                    .collect::<std::result::Result<_, _>>()?
            };
            if tuple.len() != degree {
                return Err(format!("key \"{key}\" has length {} != degree {degree}", tuple.len()));
            }
            if tuple.iter().any(|&x| x >= shelf_size) {
                return Err(format!("key \"{key}\" has an entry out of range 0..{shelf_size}"));
            }
            let c = v
                .as_i64()
                .ok_or_else(|| format!("value for \"{key}\" must be an integer"))?;
            out.set(0, &tuple, BigInt::from(c));
        }
        Ok(out)
    }
}

fn complex_tuple(size: usize, n: usize, mut idx: usize) -> Tuple {
    let mut t = vec![0usize; n];
    for i in (0..n).rev() {
        t[i] = idx % size;
        idx /= size;
    }
    t
}

fn require_trivial(f: &Cochain, op: &'static str) -> Result<()> {
    if f.coeff_size != 1 {
        return Err(Error::CoefficientUnsupported {
            op,
            reason: "the coproduct lives on the trivial-coefficient complex",
        });
    }
    Ok(())
}

fn require_same_ring(f: &Cochain, g: &Cochain, op: &'static str) -> Result<()> {
    if f.modulus != g.modulus || f.shelf_size != g.shelf_size {
        return Err(Error::DimensionMismatch {
            context: format!("{op}: cochains live over different rings or shelves"),
        });
    }
    Ok(())
}

/// A cohomology class: a representative checked to be a cocycle on
/// construction.
#[derive(Debug, Clone)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Cochain,
}

impl CohomologyClass {
    pub fn new(shelf: &FiniteShelf, coeff: &CoefficientSystem, rep: Cochain) -> Result<Self> {
        let d = coboundary(shelf, coeff, &rep)?;
        if !d.is_zero() {
            return Err(Error::Internal(
                "representative is not a cocycle".to_string(),
            ));
        }
        Ok(CohomologyClass {
            degree: rep.degree,
            representative: rep,
        })
    }

    /// Serialized with its representative table.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "representative": self.representative.to_json(),
        })
    }
}

/// Cochain differential `d*f = (-1)^{|f|} f∘d`.
pub fn coboundary(shelf: &FiniteShelf, coeff: &CoefficientSystem, f: &Cochain) -> Result<Cochain> {
    if f.coeff_size != coeff.size(shelf) || f.shelf_size != shelf.size {
        return Err(Error::DimensionMismatch {
            context: "coboundary: cochain does not match the coefficient system".into(),
        });
    }
    let n = f.degree + 1;
    let mut out = Cochain::zero(n, f.coeff_size, f.shelf_size, f.modulus);
    let sign = if f.degree % 2 == 0 { 1 } else { -1 };
    for idx in 0..out.len() {
        let b = complex::basis_element(shelf, n, idx);
        let mut acc = BigInt::zero();
        for (fb, c) in boundary_of_basis(shelf, coeff, &b).terms {
            acc += c * &f.values[basis_index(shelf, &fb)];
        }
        out.values[idx] = out.reduce(acc * sign);
    }
    Ok(out)
}

/// Koszul evaluation of `f ⊗ g` against a tensor.
fn pair_against(f: &Cochain, g: &Cochain, t: &BarTensor) -> BigInt {
    let mut acc = BigInt::zero();
    for ((u, v), c) in &t.terms {
        if u.len() != f.degree || v.len() != g.degree {
            continue;
        }
        let sign = if g.degree % 2 == 1 && u.len() % 2 == 1 {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        acc += sign * c * f.eval_tuple(u) * g.eval_tuple(v);
    }
    acc
}

/// Cup product `(f⌣g)(b) = (f ⊗ g)(Δb)`. Defined on trivial-coefficient
/// cochains, where the coproduct of B̄ lives.
pub fn cup(shelf: &FiniteShelf, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    require_trivial(f, "cup")?;
    require_trivial(g, "cup")?;
    require_same_ring(f, g, "cup")?;
    let n = f.degree + g.degree;
    let mut out = Cochain::zero(n, 1, f.shelf_size, f.modulus);
    for t in dgbial::tuples(shelf.size, n) {
        let delta = coproduct_multiplicative(shelf, &BarElement::basis(&t));
        let val = out.reduce(pair_against(f, g, &delta));
        let idx = out.index_of(0, &t);
        out.values[idx] = val;
    }
    Ok(out)
}

/// Dendriform half-products `(f↼g)(b) = (f ⊗ g)(←Δ b)` and
/// `(f⇀g)(b) = (f ⊗ g)(→Δ b)`, on positive-degree cochains.
pub fn half_cup(
    shelf: &FiniteShelf,
    f: &Cochain,
    g: &Cochain,
    side: DendriSide,
) -> Result<Cochain> {
    require_trivial(f, "half_cup")?;
    require_trivial(g, "half_cup")?;
    require_same_ring(f, g, "half_cup")?;
    if f.degree == 0 || g.degree == 0 {
        return Err(Error::DegreeUnsupported {
            op: "half_cup (positive degrees only)",
            degree: 0,
        });
    }
    let n = f.degree + g.degree;
    let mut out = Cochain::zero(n, 1, f.shelf_size, f.modulus);
    for t in dgbial::tuples(shelf.size, n) {
        let half = dendri(shelf, &BarElement::basis(&t), side)?;
        let val = out.reduce(pair_against(f, g, &half));
        let idx = out.index_of(0, &t);
        out.values[idx] = val;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Commutativity,
    Zinbielity,
}

/// Homotopy witness `μ(f⊗g)∘h` (resp. `∘h̄`), normalized by the global sign
/// `(-1)^{|f|+|g|-1}` so that the degree-(1,1) commutativity witness is the
/// classical `b ↦ f(b)g(b)`. With this normalization the controls
/// `f⌣g - (-1)^{|f||g|} g⌣f = ε_c d*(witness)` and
/// `f⇀g - (-1)^{|f||g|} g↼f = ε_z d*(witness)` hold for cocycles with signs
/// ε_c = ε_z that do not depend on the degrees.
pub fn witness(
    shelf: &FiniteShelf,
    f: &Cochain,
    g: &Cochain,
    kind: WitnessKind,
) -> Result<Cochain> {
    require_trivial(f, "witness")?;
    require_trivial(g, "witness")?;
    require_same_ring(f, g, "witness")?;
    if f.degree + g.degree == 0 {
        return Err(Error::DegreeUnsupported {
            op: "witness (positive total degree only)",
            degree: 0,
        });
    }
    let n = f.degree + g.degree - 1;
    let norm = if n % 2 == 0 { 1 } else { -1 };
    let mut out = Cochain::zero(n, 1, f.shelf_size, f.modulus);
    for t in dgbial::tuples(shelf.size, n) {
        let b = BarElement::basis(&t);
        let image = match kind {
            WitnessKind::Commutativity => homotopy_h(shelf, &b),
            WitnessKind::Zinbielity => homotopy_hbar(shelf, &b),
        };
        let val = out.reduce(pair_against(f, g, &image) * norm);
        let idx = out.index_of(0, &t);
        out.values[idx] = val;
    }
    Ok(out)
}

/// The translation action `(x·f)(x₁,…,xₙ) = f(x₁◁x, …, xₙ◁x)` on
/// trivial-coefficient cochains.
pub fn x_action(shelf: &FiniteShelf, x: usize, f: &Cochain) -> Result<Cochain> {
    require_trivial(f, "x_action")?;
    let mut out = f.clone();
    for t in dgbial::tuples(shelf.size, f.degree) {
        let translated: Tuple = t.iter().map(|&y| shelf.act(y, x)).collect();
        let idx = out.index_of(0, &t);
        out.values[idx] = f.eval_tuple(&translated);
    }
    Ok(out)
}

/// Coboundary-membership solver for one target degree: the Smith normal
/// form (or mod-p echelon form) of the `d*` matrix is computed once and
/// reused across membership queries.
pub struct CoboundarySolver {
    degree: usize,
    coeff_size: usize,
    shelf_size: usize,
    modulus: Option<u64>,
    backend: SolverBackend,
}

enum SolverBackend {
    /// degree 0: the image of d* is {0}
    Zero,
    Integral(exactlin::SnfResult),
    Modular(ModMatrix),
}

impl CoboundarySolver {
    pub fn new(
        shelf: &FiniteShelf,
        coeff: &CoefficientSystem,
        degree: usize,
        modulus: Option<u64>,
        cap: usize,
    ) -> Result<Self> {
        let coeff_size = coeff.size(shelf);
        if degree == 0 {
            return Ok(CoboundarySolver {
                degree,
                coeff_size,
                shelf_size: shelf.size,
                modulus,
                backend: SolverBackend::Zero,
            });
        }
        // d* : C^{n-1} → C^n is (-1)^{n-1} ∂ₙᵀ
        let mut m = boundary_matrix(shelf, coeff, degree, cap)?.transpose();
        if (degree - 1) % 2 == 1 {
            m = m.mul(&IntMatrix::from_fn(m.cols, m.cols, |i, j| {
                if i == j {
                    BigInt::from(-1)
                } else {
                    BigInt::zero()
                }
            }));
        }
        let backend = match modulus {
            None => SolverBackend::Integral(exactlin::smith_normal_form(&m)),
            Some(p) => {
                exactlin::require_prime(p)?;
                SolverBackend::Modular(ModMatrix::from_int(&m, p))
            }
        };
        Ok(CoboundarySolver {
            degree,
            coeff_size,
            shelf_size: shelf.size,
            modulus,
            backend,
        })
    }

    /// A preimage under d*, or None when `f` is not a coboundary.
    pub fn preimage(&self, f: &Cochain) -> Result<Option<Cochain>> {
        if f.degree != self.degree || f.modulus != self.modulus {
            return Err(Error::DimensionMismatch {
                context: "coboundary solver: cochain from a different complex".into(),
            });
        }
        let values: Option<Vec<BigInt>> = match &self.backend {
            SolverBackend::Zero => {
                return Ok(if f.is_zero() {
                    Some(Cochain::zero(0, self.coeff_size, self.shelf_size, self.modulus))
                } else {
                    None
                })
            }
            SolverBackend::Integral(snf) => snf.solve(&f.values),
            SolverBackend::Modular(m) => {
                let p = self.modulus.unwrap();
                let b: Vec<u64> = f
                    .values
                    .iter()
                    .map(|v| v.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                    .collect();
                m.solve(&b).map(|x| x.into_iter().map(BigInt::from).collect())
            }
        };
        Ok(values.map(|values| {
            Cochain {
                degree: self.degree - 1,
                coeff_size: self.coeff_size,
                shelf_size: self.shelf_size,
                modulus: self.modulus,
                values,
            }
            .normalized()
        }))
    }
}

/// Find `g` with `d*g = f`, over ℤ or F_p. Returns None when `f` is not a
/// coboundary. For repeated queries in one degree use [`CoboundarySolver`].
pub fn is_coboundary(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    f: &Cochain,
    cap: usize,
) -> Result<Option<Cochain>> {
    if f.coeff_size != coeff.size(shelf) || f.shelf_size != shelf.size {
        return Err(Error::DimensionMismatch {
            context: "is_coboundary: cochain does not match the coefficient system".into(),
        });
    }
    CoboundarySolver::new(shelf, coeff, f.degree, f.modulus, cap)?.preimage(f)
}

// ---------------------------------------------------------------------------
// induced coproduct on H_n(X, F_p)
// ---------------------------------------------------------------------------

/// Structure constants of the coproduct induced on mod-p homology:
/// `Δ[z_i] = Σ c ([z_j] ⊗ [z_k])` per homogeneous bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedCoproduct {
    pub prime: u64,
    pub max_degree: usize,
    /// dim H_k(X, F_p) for k = 0..=max_degree
    pub dims: Vec<usize>,
    /// `terms[k][i]` = map (left degree, left class, right class) → coefficient
    pub terms: Vec<Vec<BTreeMap<(usize, usize, usize), u64>>>,
}

struct DegreeData {
    dim_homology: usize,
    /// projection C_k → H_k in the chosen splitting: dim_homology × dim C_k
    projection: ModMatrix,
    /// homology class representatives (cycles), as coordinate vectors
    classes: Vec<Vec<u64>>,
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

fn add_multiple(p: u64, target: &mut [u64], source: &[u64], factor: u64) {
    for (t, s) in target.iter_mut().zip(source) {
        *t = (*t + (*s as u128 * factor as u128 % p as u128) as u64) % p;
    }
}

fn fermat_inverse(p: u64, a: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Echelon-insert: returns true if `v` was independent and got absorbed.
fn echelon_insert(p: u64, rows: &mut Vec<Vec<u64>>, mut v: Vec<u64>) -> bool {
    for row in rows.iter() {
        let lead = row.iter().position(|&x| x != 0).unwrap();
        if v[lead] != 0 {
            let factor = (p - v[lead]) % p;
            add_multiple(p, &mut v, row, factor);
        }
    }
    match v.iter().position(|&x| x != 0) {
        None => false,
        Some(lead) => {
            let f = fermat_inverse(p, v[lead]);
            for x in v.iter_mut() {
                *x = (*x as u128 * f as u128 % p as u128) as u64;
            }
            rows.push(v);
            rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
            true
        }
    }
}

fn degree_data(
    shelf: &FiniteShelf,
    p: u64,
    d_k: &ModMatrix,
    d_k1: &ModMatrix,
    seed: u64,
) -> Result<DegreeData> {
    let dim = d_k.cols;
    let mut state = seed | 1;
    // kernel of d_k and a complement from the pivot columns
    let mut rref_k = d_k.clone();
    let pivots = rref_k.rref();
    let kernel = d_k.kernel_basis();
    // image of d_{k+1} in echelon form
    let mut image: Vec<Vec<u64>> = Vec::new();
    for j in 0..d_k1.cols {
        let col: Vec<u64> = (0..d_k1.rows).map(|i| d_k1.get(i, j)).collect();
        echelon_insert(p, &mut image, col);
    }
    let dim_image = image.len();
    // extend the image to a basis of the kernel; the added vectors are the
    // homology class representatives
    let mut span = image.clone();
    let mut classes: Vec<Vec<u64>> = Vec::new();
    for v in &kernel {
        let mut candidate = v.clone();
        // randomized complement: shift by a random image element
        for img in &image {
            let r = xorshift(&mut state) % p;
            add_multiple(p, &mut candidate, img, r);
        }
        if echelon_insert(p, &mut span, candidate.clone()) {
            classes.push(candidate);
        }
    }
    let dim_homology = classes.len();
    // complement of the kernel: unit vectors on pivot columns, shifted by a
    // random kernel element
    let mut complement: Vec<Vec<u64>> = Vec::new();
    for &c in &pivots {
        let mut v = vec![0u64; dim];
        v[c] = 1;
        for k in &kernel {
            let r = xorshift(&mut state) % p;
            add_multiple(p, &mut v, k, r);
        }
        complement.push(v);
    }
    if dim_image + dim_homology + complement.len() != dim {
        return Err(Error::Internal(format!(
            "splitting dimensions do not add up in degree with dim {dim}"
        )));
    }
    // change of basis [image | classes | complement] and its inverse
    let cols: Vec<&Vec<u64>> = image
        .iter()
        .chain(classes.iter())
        .chain(complement.iter())
        .collect();
    let mut aug = ModMatrix::zero(p, dim, 2 * dim);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            aug.set(i, j, col[i]);
        }
    }
    for i in 0..dim {
        aug.set(i, dim + i, 1);
    }
    let piv = aug.rref();
    if piv.len() != dim || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::Internal("change of basis is singular".into()));
    }
    let mut projection = ModMatrix::zero(p, dim_homology, dim);
    for r in 0..dim_homology {
        for j in 0..dim {
            projection.set(r, j, aug.get(dim_image + r, dim + j));
        }
    }
    let _ = shelf;
    Ok(DegreeData {
        dim_homology,
        projection,
        classes,
    })
}

/// Structure constants of the induced coproduct on `H_k(X, F_p)` for
/// `k ≤ max_degree`, with a seeded choice of complements. Two different seeds
/// must produce identical constants; that independence is part of the
/// acceptance suite.
pub fn induced_coproduct(
    shelf: &FiniteShelf,
    p: u64,
    max_degree: usize,
    seed: u64,
    cap: usize,
) -> Result<InducedCoproduct> {
    exactlin::require_prime(p)?;
    let coeff = CoefficientSystem::Trivial;
    let mut boundaries = Vec::new();
    for k in 0..=max_degree + 1 {
        boundaries.push(ModMatrix::from_int(
            &boundary_matrix(shelf, &coeff, k, cap)?,
            p,
        ));
    }
    let data: Vec<DegreeData> = (0..=max_degree)
        .map(|k| {
            let degree_seed = seed ^ ((k as u64 + 1) << 32) ^ (k as u64 + 1);
            degree_data(shelf, p, &boundaries[k], &boundaries[k + 1], degree_seed)
        })
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = data.iter().map(|d| d.dim_homology).collect();
    let mut terms = Vec::new();
    for (k, dk) in data.iter().enumerate() {
        let mut per_class = Vec::new();
        for z in &dk.classes {
            // lift the cycle to B̄ over ℤ and push through Δ
            let mut bar = BarElement::zero(k);
            for (idx, &c) in z.iter().enumerate() {
                if c != 0 {
                    bar.add_term(complex_tuple(shelf.size, k, idx), BigInt::from(c));
                }
            }
            let delta = coproduct_multiplicative(shelf, &bar);
            let mut constants: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
            for ((u, v), c) in &delta.terms {
                let a = u.len();
                let b = v.len();
                debug_assert_eq!(a + b, k);
                let cc = c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                if cc == 0 {
                    continue;
                }
                let ui = tuple_index(shelf.size, u);
                let vi = tuple_index(shelf.size, v);
                for jl in 0..data[a].dim_homology {
                    let pl = data[a].projection.get(jl, ui);
                    if pl == 0 {
                        continue;
                    }
                    for jr in 0..data[b].dim_homology {
                        let pr = data[b].projection.get(jr, vi);
                        if pr == 0 {
                            continue;
                        }
                        let add = (cc as u128 * pl as u128 % p as u128) as u64;
                        let add = (add as u128 * pr as u128 % p as u128) as u64;
                        let entry = constants.entry((a, jl, jr)).or_insert(0);
                        *entry = (*entry + add) % p;
                    }
                }
            }
            constants.retain(|_, v| *v != 0);
            per_class.push(constants);
        }
        terms.push(per_class);
    }
    Ok(InducedCoproduct {
        prime: p,
        max_degree,
        dims,
        terms,
    })
}

fn tuple_index(size: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * size + x)
}

impl InducedCoproduct {
    /// `(ε ⊗ Id)Δ = Id` on classes: the left-degree-0 part of `Δ[z_i]`
    /// must be `[1] ⊗ [z_i]`, and symmetrically.
    pub fn counit_laws_hold(&self) -> bool {
        for (k, per_class) in self.terms.iter().enumerate() {
            for (i, constants) in per_class.iter().enumerate() {
                for j in 0..self.dims[k] {
                    let left = constants.get(&(0, 0, j)).copied().unwrap_or(0);
                    let right = constants.get(&(k, j, 0)).copied().unwrap_or(0);
                    let expect = if i == j { 1 } else { 0 };
                    if left != expect || right != expect {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coassociativity of the induced coproduct, by contracting structure
    /// constants both ways.
    pub fn coassociative(&self) -> bool {
        let p = self.prime;
        for k in 0..=self.max_degree {
            for i in 0..self.dims[k] {
                // (Δ ⊗ Id)Δ and (Id ⊗ Δ)Δ as maps into triples
                let mut lhs: BTreeMap<(usize, usize, usize, usize, usize), u64> = BTreeMap::new();
                let mut rhs: BTreeMap<(usize, usize, usize, usize, usize), u64> = BTreeMap::new();
                for ((a, j, l), &c) in &self.terms[k][i] {
                    for ((a2, j2, l2), &c2) in &self.terms[*a][*j] {
                        let key = (*a2, *j2, a - a2, *l2, *l);
                        let e = lhs.entry(key).or_insert(0);
                        *e = (*e + ((c as u128 * c2 as u128) % p as u128) as u64) % p;
                    }
                    let b = k - a;
                    for ((a2, j2, l2), &c2) in &self.terms[b][*l] {
                        let key = (*a, *j, *a2, *j2, *l2);
                        let e = rhs.entry(key).or_insert(0);
                        *e = (*e + ((c as u128 * c2 as u128) % p as u128) as u64) % p;
                    }
                }
                lhs.retain(|_, v| *v != 0);
                rhs.retain(|_, v| *v != 0);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
