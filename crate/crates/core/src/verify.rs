//! Identity suites behind the CLI `verify` command. Each suite runs a family
//! of exhaustive checks up to a degree bound and reports the first failure
//! with a re-runnable instance (shelf table plus offending element).
//!
//! The per-tuple sweeps fan out through `par`, which keeps the first witness
//! deterministic: the reported instance is the lexicographically earliest
//! one whether the build is parallel or sequential.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::complex::{self, basis_size};
use crate::dgbial::{
    self, coproduct_multiplicative, dendri, detect_hbar_sign, diff, flip_dendri_defect,
    hbar_defect, homotopy_h, tau, tensor_diff, tuples, BarElement, BarTensor, DendriSide, Tuple,
};
use crate::error::Result;
use crate::par;
use crate::products::{
    coboundary, cup, half_cup, witness, x_action, CoboundarySolver, Cochain, WitnessKind,
};
use crate::shelf::{CoefficientSystem, FiniteShelf};
use crate::split::{self, SplitPart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Complex,
    Dgb,
    Homotopy,
    Dendriform,
    Zinbiel,
    Action,
    Splitting,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Complex,
        Suite::Dgb,
        Suite::Homotopy,
        Suite::Dendriform,
        Suite::Zinbiel,
        Suite::Action,
        Suite::Splitting,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Complex => "complex",
            Suite::Dgb => "dgb",
            Suite::Homotopy => "homotopy",
            Suite::Dendriform => "dendriform",
            Suite::Zinbiel => "zinbiel",
            Suite::Action => "action",
            Suite::Splitting => "splitting",
        }
    }

    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Skipped,
}

/// Re-runnable witness: the shelf JSON plus the offending element and both
/// sides of the identity.
#[derive(Debug, Clone, Serialize)]
pub struct FailureInstance {
    pub shelf: serde_json::Value,
    pub coefficients: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<FailureInstance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

fn shelf_json(shelf: &FiniteShelf) -> serde_json::Value {
    serde_json::json!({ "size": shelf.size, "table": shelf.table })
}

/// Payload of one failed identity: (identity, element, lhs, rhs).
type Fail = (String, String, String, String);

struct Ctx<'a> {
    shelf: &'a FiniteShelf,
    max_degree: usize,
    modulus: Option<u64>,
    cap: usize,
    checks: Vec<CheckResult>,
}

impl<'a> Ctx<'a> {
    fn pass(&mut self, suite: &'static str, identity: impl Into<String>) {
        self.checks.push(CheckResult {
            suite,
            identity: identity.into(),
            status: Status::Pass,
            instance: None,
        });
    }

    /// Record a failure; returns true so callers can bail out early.
    fn fail(&mut self, suite: &'static str, coeff: &str, f: Fail) -> bool {
        self.checks.push(CheckResult {
            suite,
            identity: f.0,
            status: Status::Fail,
            instance: Some(FailureInstance {
                shelf: shelf_json(self.shelf),
                coefficients: coeff.to_string(),
                element: f.1,
                lhs: f.2,
                rhs: f.3,
            }),
        });
        true
    }

    fn info(&mut self, suite: &'static str, identity: impl Into<String>) {
        self.checks.push(CheckResult {
            suite,
            identity: identity.into(),
            status: Status::Info,
            instance: None,
        });
    }

    fn skipped(&mut self, suite: &'static str, identity: impl Into<String>) {
        self.checks.push(CheckResult {
            suite,
            identity: identity.into(),
            status: Status::Skipped,
            instance: None,
        });
    }
}

/// Coboundary solvers per target degree, built lazily and reused.
struct SolverCache {
    modulus: Option<u64>,
    cap: usize,
    map: BTreeMap<usize, CoboundarySolver>,
}

impl SolverCache {
    fn new(modulus: Option<u64>, cap: usize) -> Self {
        SolverCache {
            modulus,
            cap,
            map: BTreeMap::new(),
        }
    }

    fn get(&mut self, shelf: &FiniteShelf, degree: usize) -> Result<&CoboundarySolver> {
        if !self.map.contains_key(&degree) {
            let solver = CoboundarySolver::new(
                shelf,
                &CoefficientSystem::Trivial,
                degree,
                self.modulus,
                self.cap,
            )?;
            self.map.insert(degree, solver);
        }
        Ok(self.map.get(&degree).unwrap())
    }
}

/// Run the requested suites against one shelf and coefficient system.
pub fn run_suites(
    shelf: &FiniteShelf,
    coeff: &CoefficientSystem,
    suites: &[Suite],
    max_degree: usize,
    modulus: Option<u64>,
    cap: usize,
) -> Result<SuiteReport> {
    let mut ctx = Ctx {
        shelf,
        max_degree,
        modulus,
        cap,
        checks: Vec::new(),
    };
    for suite in suites {
        match suite {
            Suite::Complex => complex_suite(&mut ctx, coeff)?,
            Suite::Dgb => dgb_suite(&mut ctx)?,
            Suite::Homotopy => homotopy_suite(&mut ctx)?,
            Suite::Dendriform => dendriform_suite(&mut ctx)?,
            Suite::Zinbiel => zinbiel_suite(&mut ctx)?,
            Suite::Action => action_suite(&mut ctx)?,
            Suite::Splitting => splitting_suite(&mut ctx)?,
        }
    }
    Ok(SuiteReport { checks: ctx.checks })
}

/// Lexicographically first failure of a per-tuple check over all tuples of
/// each degree in the range, fanned out in parallel.
fn sweep_tuples<F>(
    shelf: &FiniteShelf,
    degrees: std::ops::RangeInclusive<usize>,
    f: F,
) -> Option<Fail>
where
    F: Fn(&[usize]) -> Option<Fail> + Sync + Send,
{
    for n in degrees {
        let all = tuples(shelf.size, n);
        if let Some(fail) = par::find_first(all.len(), |i| f(&all[i])) {
            return Some(fail);
        }
    }
    None
}

fn chain_string(c: &complex::Chain) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    c.terms
        .iter()
        .map(|(b, v)| format!("{v}*({},{:?})", b.coeff, b.tuple))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tensor_string(t: &BarTensor) -> String {
    if t.terms.is_empty() {
        return "0".into();
    }
    t.terms
        .iter()
        .map(|((l, r), c)| format!("{c}*({l:?}x{r:?})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cochain_string(f: &Cochain) -> String {
    serde_json::to_string(&f.to_json()).unwrap_or_else(|_| "<cochain>".into())
}

// ---------------------------------------------------------------------------
// complex suite
// ---------------------------------------------------------------------------

fn complex_suite(ctx: &mut Ctx, coeff: &CoefficientSystem) -> Result<()> {
    let shelf = ctx.shelf;
    let desc = coeff.describe();
    for n in 0..=ctx.max_degree {
        let size = basis_size(shelf, coeff, n, ctx.cap)?;
        let fail = par::find_first(size, |idx| {
            let b = complex::basis_element(shelf, n, idx);
            let db = complex::boundary_of_basis(shelf, coeff, &b);
            let ddb = complex::boundary_of_chain(shelf, coeff, &db);
            if ddb.is_zero() {
                None
            } else {
                Some((
                    "dd = 0".to_string(),
                    format!("({},{:?})", b.coeff, b.tuple),
                    chain_string(&ddb),
                    "0".to_string(),
                ))
            }
        });
        if let Some(f) = fail {
            ctx.fail("complex", &desc, f);
            return Ok(());
        }
    }
    ctx.pass(
        "complex",
        format!("dd = 0 up to degree {} ({desc})", ctx.max_degree),
    );

    for n in 2..=ctx.max_degree {
        let size = basis_size(shelf, coeff, n, ctx.cap)?;
        let fail = par::find_first(size, |idx| {
            let b = complex::basis_element(shelf, n, idx);
            for j in 2..=n {
                for i in 1..j {
                    for side_i in 0..2u8 {
                        for side_j in 0..2u8 {
                            let inner_j = complex::face(shelf, coeff, side_j, j, &b).ok()?;
                            let lhs = complex::face(shelf, coeff, side_i, i, &inner_j).ok()?;
                            let inner_i = complex::face(shelf, coeff, side_i, i, &b).ok()?;
                            let rhs =
                                complex::face(shelf, coeff, side_j, j - 1, &inner_i).ok()?;
                            if lhs != rhs {
                                return Some((
                                    format!(
                                        "face_{i}^{side_i} face_{j}^{side_j} = face_{}^{side_j} face_{i}^{side_i}",
                                        j - 1
                                    ),
                                    format!("({},{:?})", b.coeff, b.tuple),
                                    format!("({},{:?})", lhs.coeff, lhs.tuple),
                                    format!("({},{:?})", rhs.coeff, rhs.tuple),
                                ));
                            }
                        }
                    }
                }
            }
            None
        });
        if let Some(f) = fail {
            ctx.fail("complex", &desc, f);
            return Ok(());
        }
    }
    ctx.pass(
        "complex",
        format!("cube identities up to degree {} ({desc})", ctx.max_degree),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// d.g. bialgebra suite
// ---------------------------------------------------------------------------

type Triple = BTreeMap<(Tuple, Tuple, Tuple), BigInt>;

fn triple_coproduct(shelf: &FiniteShelf, b: &BarElement, expand_left: bool) -> Triple {
    let delta = coproduct_multiplicative(shelf, b);
    let mut out = Triple::new();
    for ((l, r), c) in &delta.terms {
        let inner = if expand_left {
            coproduct_multiplicative(shelf, &BarElement::basis(l))
        } else {
            coproduct_multiplicative(shelf, &BarElement::basis(r))
        };
        for ((a, bb), c2) in &inner.terms {
            let key = if expand_left {
                (a.clone(), bb.clone(), r.clone())
            } else {
                (l.clone(), a.clone(), bb.clone())
            };
            let entry = out.entry(key).or_insert_with(BigInt::zero);
            *entry += c * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn dgb_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    let max = ctx.max_degree.min(4);

    let fail = sweep_tuples(shelf, 0..=max, |t| {
        let b = BarElement::basis(t);
        let lhs = triple_coproduct(shelf, &b, true);
        let rhs = triple_coproduct(shelf, &b, false);
        if lhs != rhs {
            return Some((
                "coassociativity".into(),
                format!("{t:?}"),
                format!("{} terms", lhs.len()),
                format!("{} terms", rhs.len()),
            ));
        }
        let delta = coproduct_multiplicative(shelf, &b);
        let mut left_counit = BarElement::zero(t.len());
        let mut right_counit = BarElement::zero(t.len());
        for ((l, r), c) in &delta.terms {
            if l.is_empty() {
                left_counit.add_term(r.clone(), c.clone());
            }
            if r.is_empty() {
                right_counit.add_term(l.clone(), c.clone());
            }
        }
        if left_counit != b || right_counit != b {
            return Some((
                "counit laws".into(),
                format!("{t:?}"),
                format!("{left_counit:?}"),
                format!("{right_counit:?}"),
            ));
        }
        let cod_lhs = coproduct_multiplicative(shelf, &diff(shelf, &b));
        let cod_rhs = tensor_diff(shelf, &delta);
        if cod_lhs != cod_rhs {
            return Some((
                "coderivation: Delta d = (d⊗Id + Id⊗d) Delta".into(),
                format!("{t:?}"),
                tensor_string(&cod_lhs),
                tensor_string(&cod_rhs),
            ));
        }
        None
    });
    if let Some(f) = fail {
        ctx.fail("dgb", "trivial", f);
        return Ok(());
    }
    ctx.pass("dgb", format!("coassociativity up to degree {max}"));
    ctx.pass("dgb", format!("counit laws up to degree {max}"));
    ctx.pass("dgb", format!("coderivation law up to degree {max}"));

    // bar differential matches the chain boundary under the identification
    let bar_max = ctx.max_degree.min(5);
    let trivial = CoefficientSystem::Trivial;
    let fail = sweep_tuples(shelf, 0..=bar_max, |t| {
        let bar = diff(shelf, &BarElement::basis(t));
        let chain = complex::boundary_of_basis(
            shelf,
            &trivial,
            &complex::ChainBasisElement {
                coeff: 0,
                tuple: t.to_vec(),
            },
        );
        let mut as_bar = BarElement::zero(t.len().saturating_sub(1));
        for (cb, c) in &chain.terms {
            as_bar.add_term(cb.tuple.clone(), c.clone());
        }
        if bar != as_bar {
            Some((
                "bar differential = chain boundary".into(),
                format!("{t:?}"),
                format!("{bar:?}"),
                format!("{as_bar:?}"),
            ))
        } else {
            None
        }
    });
    if let Some(f) = fail {
        ctx.fail("dgb", "trivial", f);
        return Ok(());
    }
    ctx.pass(
        "dgb",
        format!("bar differential matches the chain boundary up to degree {bar_max}"),
    );

    if shelf.is_rack {
        let fail = sweep_tuples(shelf, 0..=max, |t| {
            let b = BarElement::basis(t);
            let a = coproduct_multiplicative(shelf, &b);
            let u = dgbial::coproduct_unshuffle_unchecked(shelf, &b);
            if a != u {
                Some((
                    "multiplicative vs unshuffle coproduct".into(),
                    format!("{t:?}"),
                    tensor_string(&a),
                    tensor_string(&u),
                ))
            } else {
                None
            }
        });
        if let Some(f) = fail {
            ctx.fail("dgb", "trivial", f);
            return Ok(());
        }
        ctx.pass(
            "dgb",
            format!("multiplicative and unshuffle coproducts agree up to degree {max}"),
        );
    } else {
        // the unshuffle formula is only claimed for racks; compare and report
        let disagreement = sweep_tuples(shelf, 0..=max, |t| {
            let b = BarElement::basis(t);
            let a = coproduct_multiplicative(shelf, &b);
            let u = dgbial::coproduct_unshuffle_unchecked(shelf, &b);
            if a != u {
                Some((String::new(), format!("{t:?}"), String::new(), String::new()))
            } else {
                None
            }
        });
        ctx.info(
            "dgb",
            format!(
                "non-rack shelf: unshuffle formula {} the multiplicative coproduct (informational)",
                if disagreement.is_none() {
                    "matches"
                } else {
                    "differs from"
                }
            ),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// homotopy suite
// ---------------------------------------------------------------------------

fn homotopy_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    let max = ctx.max_degree.min(4);

    // closed forms in degrees 1 and 2
    for x in 0..shelf.size {
        let h = homotopy_h(shelf, &BarElement::basis(&[x]));
        let expect = BarTensor::tensor_of(&BarElement::basis(&[x]), &BarElement::basis(&[x]));
        if h != expect {
            ctx.fail(
                "homotopy",
                "trivial",
                (
                    "h(e_x) = e_x⊗e_x".into(),
                    format!("[{x}]"),
                    tensor_string(&h),
                    tensor_string(&expect),
                ),
            );
            return Ok(());
        }
    }
    for x in 0..shelf.size {
        for y in 0..shelf.size {
            let h = homotopy_h(shelf, &BarElement::basis(&[x, y]));
            let mut expect = BarTensor::zero();
            expect.add_term(vec![y], vec![x, y], BigInt::from(1));
            expect.add_term(vec![x], vec![x, y], BigInt::from(1));
            expect.add_term(vec![x, y], vec![shelf.act(x, y)], BigInt::from(-1));
            expect.add_term(vec![x, y], vec![y], BigInt::from(-1));
            if h != expect {
                ctx.fail(
                    "homotopy",
                    "trivial",
                    (
                        "h(e_xe_y) closed form".into(),
                        format!("[{x},{y}]"),
                        tensor_string(&h),
                        tensor_string(&expect),
                    ),
                );
                return Ok(());
            }
        }
    }
    ctx.pass("homotopy", "closed forms of h in degrees 1 and 2");

    let fail = sweep_tuples(shelf, 0..=max, |t| {
        let b = BarElement::basis(t);
        let lhs =
            tensor_diff(shelf, &homotopy_h(shelf, &b)).add(&homotopy_h(shelf, &diff(shelf, &b)));
        let delta = coproduct_multiplicative(shelf, &b);
        let rhs = delta.sub(&tau(&delta));
        if lhs != rhs {
            Some((
                "(d⊗Id + Id⊗d)h + hd = Delta - tau Delta".into(),
                format!("{t:?}"),
                tensor_string(&lhs),
                tensor_string(&rhs),
            ))
        } else {
            None
        }
    });
    if let Some(f) = fail {
        ctx.fail("homotopy", "trivial", f);
        return Ok(());
    }
    ctx.pass(
        "homotopy",
        format!("commutativity homotopy identity up to degree {max}"),
    );

    // cochain-level consequence: the commutativity defect of cocycle cup
    // products is ε_c d*(witness) with one global sign
    let trivial = CoefficientSystem::Trivial;
    let mut cup_sign: Option<i8> = None;
    for p in 1..max {
        for q in 1..=(max - p) {
            let fs = complex::cocycle_basis(shelf, &trivial, p, ctx.modulus, ctx.cap)?;
            let gs = complex::cocycle_basis(shelf, &trivial, q, ctx.modulus, ctx.cap)?;
            for f in &fs {
                for g in &gs {
                    let fg = cup(shelf, f, g)?;
                    let gf = cup(shelf, g, f)?;
                    let defect = if (p * q) % 2 == 0 {
                        fg.sub(&gf)
                    } else {
                        fg.add(&gf)
                    };
                    let w = witness(shelf, f, g, WitnessKind::Commutativity)?;
                    let dw = coboundary(shelf, &trivial, &w)?;
                    let candidate = if defect == dw {
                        Some(1)
                    } else if defect == dw.scale(&BigInt::from(-1)) {
                        Some(-1)
                    } else {
                        None
                    };
                    match (candidate, defect.is_zero()) {
                        (_, true) => {}
                        (Some(c), false) => match cup_sign {
                            None => cup_sign = Some(c),
                            Some(s) if s == c => {}
                            Some(s) => {
                                ctx.fail(
                                    "homotopy",
                                    "trivial",
                                    (
                                        "cup commutativity control has one global sign".into(),
                                        format!("degrees ({p},{q})"),
                                        format!("sign {c}"),
                                        format!("sign {s}"),
                                    ),
                                );
                                return Ok(());
                            }
                        },
                        (None, false) => {
                            ctx.fail(
                                "homotopy",
                                "trivial",
                                (
                                    "f cup g - (-1)^{pq} g cup f = ±d*(witness)".into(),
                                    format!("degrees ({p},{q})"),
                                    cochain_string(&defect),
                                    cochain_string(&dw),
                                ),
                            );
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    ctx.pass(
        "homotopy",
        format!(
            "cup commutativity defect is ε_c d*(witness) (ε_c = {}) up to total degree {max}",
            cup_sign.unwrap_or(1)
        ),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// dendriform suite
// ---------------------------------------------------------------------------

fn tensor_map_left(
    shelf: &FiniteShelf,
    t: &BarTensor,
    f: impl Fn(&FiniteShelf, &BarElement) -> Result<BarTensor>,
) -> Result<Triple> {
    let mut out = Triple::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), c2) in f(shelf, &BarElement::basis(l))?.terms {
            let entry = out
                .entry((a.clone(), b.clone(), r.clone()))
                .or_insert_with(BigInt::zero);
            *entry += c * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn tensor_map_right(
    shelf: &FiniteShelf,
    t: &BarTensor,
    f: impl Fn(&FiniteShelf, &BarElement) -> Result<BarTensor>,
) -> Result<Triple> {
    let mut out = Triple::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), c2) in f(shelf, &BarElement::basis(r))?.terms {
            let entry = out
                .entry((l.clone(), a.clone(), b.clone()))
                .or_insert_with(BigInt::zero);
            *entry += c * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn dendriform_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    let max = ctx.max_degree.min(4);
    let delta =
        |s: &FiniteShelf, b: &BarElement| -> Result<BarTensor> { Ok(coproduct_multiplicative(s, b)) };
    let left = |s: &FiniteShelf, b: &BarElement| dendri(s, b, DendriSide::Left);
    let right = |s: &FiniteShelf, b: &BarElement| dendri(s, b, DendriSide::Right);

    let fail = sweep_tuples(shelf, 1..=max, |t| {
        let b = BarElement::basis(t);
        let dl = dendri(shelf, &b, DendriSide::Left).ok()?;
        let dr = dendri(shelf, &b, DendriSide::Right).ok()?;
        let sum = dl.add(&dr);
        let full = coproduct_multiplicative(shelf, &b);
        if sum != full {
            return Some((
                "<-Delta + ->Delta = Delta".into(),
                format!("{t:?}"),
                tensor_string(&sum),
                tensor_string(&full),
            ));
        }
        let checks: [(&str, Triple, Triple); 3] = [
            (
                "(<-Delta⊗Id)<-Delta = (Id⊗Delta)<-Delta",
                tensor_map_left(shelf, &dl, left).ok()?,
                tensor_map_right(shelf, &dl, delta).ok()?,
            ),
            (
                "(Id⊗->Delta)->Delta = (Delta⊗Id)->Delta",
                tensor_map_right(shelf, &dr, right).ok()?,
                tensor_map_left(shelf, &dr, delta).ok()?,
            ),
            (
                "(Id⊗<-Delta)->Delta = (->Delta⊗Id)<-Delta",
                tensor_map_right(shelf, &dr, left).ok()?,
                tensor_map_left(shelf, &dl, right).ok()?,
            ),
        ];
        for (name, lhs, rhs) in checks {
            if lhs != rhs {
                return Some((
                    name.to_string(),
                    format!("{t:?}"),
                    format!("{} terms", lhs.len()),
                    format!("{} terms", rhs.len()),
                ));
            }
        }
        None
    });
    if let Some(f) = fail {
        ctx.fail("dendriform", "trivial", f);
        return Ok(());
    }
    ctx.pass(
        "dendriform",
        format!("codendriform axioms and the coproduct split up to degree {max}"),
    );

    // d.g. compatibilities: side-preserving Leibniz rules in degree >= 2 and
    // the mixed rule in degree 1
    if max >= 2 {
        let fail = sweep_tuples(shelf, 2..=max, |t| {
            let b = BarElement::basis(t);
            let db = diff(shelf, &b);
            for (side, name) in [(DendriSide::Left, "<-"), (DendriSide::Right, "->")] {
                let lhs = dendri(shelf, &db, side).ok()?;
                let rhs = tensor_diff(shelf, &dendri(shelf, &b, side).ok()?);
                if lhs != rhs {
                    return Some((
                        format!("{name}Delta d = (d⊗Id + Id⊗d){name}Delta in degree >= 2"),
                        format!("{t:?}"),
                        tensor_string(&lhs),
                        tensor_string(&rhs),
                    ));
                }
            }
            None
        });
        if let Some(f) = fail {
            ctx.fail("dendriform", "trivial", f);
            return Ok(());
        }
    }
    for t in tuples(shelf.size, 1) {
        let b = BarElement::basis(&t);
        let lhs = coproduct_multiplicative(shelf, &diff(shelf, &b));
        // (d⊗Id)<-Delta + (Id⊗d)->Delta
        let mut rhs = BarTensor::zero();
        for ((l, r), c) in dendri(shelf, &b, DendriSide::Left)?.terms {
            for (t2, c2) in diff(shelf, &BarElement::basis(&l)).terms {
                rhs.add_term(t2, r.clone(), c2 * &c);
            }
        }
        for ((l, r), c) in dendri(shelf, &b, DendriSide::Right)?.terms {
            let sign = if l.len() % 2 == 1 {
                BigInt::from(-1)
            } else {
                BigInt::from(1)
            };
            for (t2, c2) in diff(shelf, &BarElement::basis(&r)).terms {
                rhs.add_term(l.clone(), t2, c2 * &c * &sign);
            }
        }
        if lhs != rhs {
            ctx.fail(
                "dendriform",
                "trivial",
                (
                    "Delta d = (d⊗Id)<-Delta + (Id⊗d)->Delta in degree 1".into(),
                    format!("{t:?}"),
                    tensor_string(&lhs),
                    tensor_string(&rhs),
                ),
            );
            return Ok(());
        }
    }
    ctx.pass(
        "dendriform",
        format!("d.g. codendriform compatibilities up to degree {max}"),
    );

    // dual split on cochains: f<g + f>g = f cup g for cocycle pairs
    let trivial = CoefficientSystem::Trivial;
    for p in 1..max {
        for q in 1..=(max - p) {
            let fs = complex::cocycle_basis(shelf, &trivial, p, ctx.modulus, ctx.cap)?;
            let gs = complex::cocycle_basis(shelf, &trivial, q, ctx.modulus, ctx.cap)?;
            for f in &fs {
                for g in &gs {
                    let sum = half_cup(shelf, f, g, DendriSide::Left)?
                        .add(&half_cup(shelf, f, g, DendriSide::Right)?);
                    let full = cup(shelf, f, g)?;
                    if sum != full {
                        ctx.fail(
                            "dendriform",
                            "trivial",
                            (
                                "f<g + f>g = f cup g".into(),
                                format!("cocycles of degrees ({p},{q})"),
                                cochain_string(&sum),
                                cochain_string(&full),
                            ),
                        );
                        return Ok(());
                    }
                }
            }
        }
    }
    ctx.pass(
        "dendriform",
        format!("half-cups sum to the cup product up to total degree {max}"),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// zinbiel suite
// ---------------------------------------------------------------------------

fn zinbiel_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    let max = ctx.max_degree.min(4);
    let sign = detect_hbar_sign(shelf)?;
    ctx.info(
        "zinbiel",
        format!(
            "global h̄ sign resolved to {}",
            if sign > 0 { "+1" } else { "-1" }
        ),
    );
    let factor = BigInt::from(sign as i64);
    if max >= 2 {
        let fail = sweep_tuples(shelf, 2..=max, |t| {
            let b = BarElement::basis(t);
            let lhs = hbar_defect(shelf, &b);
            let rhs = flip_dendri_defect(shelf, &b).ok()?.scale(&factor);
            if lhs != rhs {
                Some((
                    "(d⊗Id + Id⊗d)h̄ + h̄d = ε(tau <-Delta - ->Delta)".into(),
                    format!("{t:?}"),
                    tensor_string(&lhs),
                    tensor_string(&rhs),
                ))
            } else {
                None
            }
        });
        if let Some(f) = fail {
            ctx.fail("zinbiel", "trivial", f);
            return Ok(());
        }
    }
    ctx.pass(
        "zinbiel",
        format!("h̄ homotopy identity with one global sign up to degree {max}"),
    );

    // cochain-level controls on cocycles
    let trivial = CoefficientSystem::Trivial;
    let mut flip_sign: Option<i8> = None;
    for p in 1..max {
        for q in 1..=(max - p) {
            let fs = complex::cocycle_basis(shelf, &trivial, p, ctx.modulus, ctx.cap)?;
            let gs = complex::cocycle_basis(shelf, &trivial, q, ctx.modulus, ctx.cap)?;
            for f in &fs {
                for g in &gs {
                    let forward = half_cup(shelf, f, g, DendriSide::Right)?;
                    let backward = half_cup(shelf, g, f, DendriSide::Left)?;
                    let defect = if (p * q) % 2 == 0 {
                        forward.sub(&backward)
                    } else {
                        forward.add(&backward)
                    };
                    let w = witness(shelf, f, g, WitnessKind::Zinbielity)?;
                    let dw = coboundary(shelf, &trivial, &w)?;
                    let candidate = if defect == dw {
                        Some(1)
                    } else if defect == dw.scale(&BigInt::from(-1)) {
                        Some(-1)
                    } else {
                        None
                    };
                    match (candidate, defect.is_zero()) {
                        (_, true) => {}
                        (Some(c), false) => match flip_sign {
                            None => flip_sign = Some(c),
                            Some(s) if s == c => {}
                            Some(s) => {
                                ctx.fail(
                                    "zinbiel",
                                    "trivial",
                                    (
                                        "half-cup flip control has one global sign".into(),
                                        format!("degrees ({p},{q})"),
                                        format!("sign {c}"),
                                        format!("sign {s}"),
                                    ),
                                );
                                return Ok(());
                            }
                        },
                        (None, false) => {
                            ctx.fail(
                                "zinbiel",
                                "trivial",
                                (
                                    "f>g - (-1)^{pq} g<f = ±d*(witness)".into(),
                                    format!("degrees ({p},{q})"),
                                    cochain_string(&defect),
                                    cochain_string(&dw),
                                ),
                            );
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    ctx.pass(
        "zinbiel",
        format!(
            "half-cup flip defect is ε_z d*(witness) (ε_z = {}) up to total degree {max}",
            flip_sign.unwrap_or(1)
        ),
    );

    // Zinbiel identity holds modulo coboundaries on cocycle triples
    let mut solvers = SolverCache::new(ctx.modulus, ctx.cap);
    for p in 1..max {
        for q in 1..max {
            for r in 1..max {
                if p + q + r > max {
                    continue;
                }
                let fs = complex::cocycle_basis(shelf, &trivial, p, ctx.modulus, ctx.cap)?;
                let gs = complex::cocycle_basis(shelf, &trivial, q, ctx.modulus, ctx.cap)?;
                let ks = complex::cocycle_basis(shelf, &trivial, r, ctx.modulus, ctx.cap)?;
                let solver = solvers.get(shelf, p + q + r)?;
                for f in &fs {
                    for g in &gs {
                        for k in &ks {
                            let lhs = half_cup(
                                shelf,
                                &half_cup(shelf, f, g, DendriSide::Left)?,
                                k,
                                DendriSide::Left,
                            )?;
                            let gk = half_cup(shelf, g, k, DendriSide::Left)?;
                            let kg = half_cup(shelf, k, g, DendriSide::Left)?;
                            let inner = if (q * r) % 2 == 0 {
                                gk.add(&kg)
                            } else {
                                gk.sub(&kg)
                            };
                            let rhs = half_cup(shelf, f, &inner, DendriSide::Left)?;
                            let defect = lhs.sub(&rhs);
                            if solver.preimage(&defect)?.is_none() {
                                ctx.fail(
                                    "zinbiel",
                                    "trivial",
                                    (
                                        "Zinbiel identity modulo coboundaries".into(),
                                        format!("cocycle degrees ({p},{q},{r})"),
                                        cochain_string(&defect),
                                        "a coboundary".into(),
                                    ),
                                );
                                return Ok(());
                            }
                        }
                    }
                }
            }
        }
    }
    ctx.pass(
        "zinbiel",
        format!("Zinbiel identity modulo coboundaries up to total degree {max}"),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// action suite
// ---------------------------------------------------------------------------

fn action_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    let trivial = CoefficientSystem::Trivial;
    let max = ctx.max_degree.min(3);
    let mut solvers = SolverCache::new(ctx.modulus, ctx.cap);
    for degree in 1..=max {
        let basis = complex::cocycle_basis(shelf, &trivial, degree, ctx.modulus, ctx.cap)?;
        let solver = solvers.get(shelf, degree)?;
        for f in &basis {
            for x in 0..shelf.size {
                let defect = x_action(shelf, x, f)?.sub(f);
                if solver.preimage(&defect)?.is_none() {
                    ctx.fail(
                        "action",
                        "trivial",
                        (
                            "x·f - f is a coboundary for cocycles".into(),
                            format!("x = {x}, cocycle of degree {degree}"),
                            cochain_string(&defect),
                            "a coboundary".into(),
                        ),
                    );
                    return Ok(());
                }
            }
        }
    }
    ctx.pass(
        "action",
        format!("translation action is trivial on cohomology up to degree {max}"),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// splitting suite
// ---------------------------------------------------------------------------

fn splitting_suite(ctx: &mut Ctx) -> Result<()> {
    let shelf = ctx.shelf;
    if !shelf.is_spindle {
        ctx.skipped(
            "splitting",
            "shelf is not a spindle; the degenerate splitting does not apply",
        );
        return Ok(());
    }
    let max = ctx.max_degree.min(4);
    // subcomplex closure: construction fails if a differential escapes
    for n in 0..=max + 1 {
        for part in [SplitPart::Quandle, SplitPart::Degenerate, SplitPart::Late] {
            if let Err(e) = split::split_boundary(shelf, part, n, ctx.cap) {
                ctx.fail(
                    "splitting",
                    "trivial",
                    (
                        format!("{} subcomplex closure", part.name()),
                        format!("degree {n}"),
                        e.to_string(),
                        "closed".into(),
                    ),
                );
                return Ok(());
            }
        }
        if let Err(e) = split::s_part_boundary(shelf, n) {
            ctx.fail(
                "splitting",
                "trivial",
                (
                    "s-image subcomplex closure".into(),
                    format!("degree {n}"),
                    e.to_string(),
                    "closed".into(),
                ),
            );
            return Ok(());
        }
    }
    ctx.pass(
        "splitting",
        format!("subcomplex closures up to degree {}", max + 1),
    );

    let rack = split::split_homology(shelf, SplitPart::Rack, max, false, ctx.modulus, ctx.cap)?;
    let quandle =
        split::split_homology(shelf, SplitPart::Quandle, max, false, ctx.modulus, ctx.cap)?;
    let degenerate =
        split::split_homology(shelf, SplitPart::Degenerate, max, false, ctx.modulus, ctx.cap)?;
    let late = split::split_homology(shelf, SplitPart::Late, max, false, ctx.modulus, ctx.cap)?;
    for n in 0..=max {
        let sum = split::group_sum(&quandle[n], &degenerate[n]);
        if !split::groups_match(&rack[n], &sum) {
            ctx.fail(
                "splitting",
                "trivial",
                (
                    "H^R = H^Q ⊕ H^D".into(),
                    format!("degree {n}"),
                    rack[n].display(),
                    sum.display(),
                ),
            );
            return Ok(());
        }
    }
    for n in 2..=max {
        let sum = split::group_sum(&late[n], &quandle[n - 1]);
        if !split::groups_match(&degenerate[n], &sum) {
            ctx.fail(
                "splitting",
                "trivial",
                (
                    "H^D = H^L ⊕ H^Q[1]".into(),
                    format!("degree {n}"),
                    degenerate[n].display(),
                    sum.display(),
                ),
            );
            return Ok(());
        }
    }
    ctx.pass(
        "splitting",
        format!("invariant-factor splitting equalities up to degree {max}"),
    );

    let checks = split::verify_splitting(shelf, max.min(3), ctx.modulus, ctx.cap)?;
    for c in checks {
        if c.passed {
            if c.name.contains("informational") {
                ctx.info("splitting", format!("{} — {}", c.name, c.detail));
            } else {
                ctx.pass("splitting", c.name);
            }
        } else {
            ctx.fail(
                "splitting",
                "trivial",
                (c.name, c.detail, "failed".into(), "pass".into()),
            );
            return Ok(());
        }
    }
    Ok(())
}
