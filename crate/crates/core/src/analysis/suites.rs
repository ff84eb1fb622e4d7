//! Named verification suites and conjecture sweeps.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{ReportBuilder, ReportKind, VerificationReport};
use super::sampling::{
    biquadratic, face_params, independent_quadratic_point, random_nonsquare,
    rational_point, sqrt_frac_field, symbol_word,
};
use crate::cf1d::{approx_interval, cf_expand, gauss_step, lattice_triangle_check, rate_bounds_check, CFExpansion};
use crate::error::{Error, Result};
use crate::exactnum::{int, NFElement, NumberField, Rational, Scalar};
use crate::gaussnd::group::{embed, s_from_generators, standard_s, standard_t, t_from_generators};
use crate::gaussnd::{
    approx_simplexes, facet_subshift_check, monkemeyer_matrices, orbit, return_step, return_step_iterated, Face,
    FacetClass, Generators, Letter, MapSystem, Orbit, OrbitStatus, Symbol,
};
use crate::lattice::scan_hull;
use crate::projective::{IntMat, ProjPoint, SimplexMat};

/// Optional knobs; each suite falls back to its own defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub seed: u64,
    pub samples: Option<usize>,
    pub dim: Option<usize>,
    pub n: Option<usize>,
    pub bound: Option<i64>,
    pub max_den: Option<i64>,
    pub steps: Option<usize>,
    /// Ascending integer coefficients of a quadratic minimal polynomial.
    pub quad: Option<Vec<BigInt>>,
    pub root_interval: Option<(Rational, Rational)>,
}

impl SuiteParams {
    pub fn seeded(seed: u64) -> Self {
        SuiteParams { seed, ..Default::default() }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    RationalZero,
    BestApprox,
    RateBounds,
    LatticePick,
    GroupIdentities,
    FirstReturnEquiv,
    SubshiftFace,
    Edge1d,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::RationalZero,
        Suite::BestApprox,
        Suite::RateBounds,
        Suite::LatticePick,
        Suite::GroupIdentities,
        Suite::FirstReturnEquiv,
        Suite::SubshiftFace,
        Suite::Edge1d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RationalZero => "rational-zero",
            Suite::BestApprox => "best-approx",
            Suite::RateBounds => "rate-bounds",
            Suite::LatticePick => "lattice-pick",
            Suite::GroupIdentities => "group-identities",
            Suite::FirstReturnEquiv => "first-return-equiv",
            Suite::SubshiftFace => "subshift-face",
            Suite::Edge1d => "edge-1d",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Harness {
    RationalZero,
    RationalDependenceFacet,
    PeriodicNumberField,
    SubshiftFace,
}

impl Harness {
    pub const ALL: [Harness; 4] =
        [Harness::RationalZero, Harness::RationalDependenceFacet, Harness::PeriodicNumberField, Harness::SubshiftFace];

    pub fn name(self) -> &'static str {
        match self {
            Harness::RationalZero => "rational-zero",
            Harness::RationalDependenceFacet => "rational-dependence-facet",
            Harness::PeriodicNumberField => "periodic-number-field",
            Harness::SubshiftFace => "subshift-face",
        }
    }
}

impl FromStr for Harness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Harness::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    match suite {
        Suite::RationalZero => rational_zero(params, ReportKind::Verification, suite.name()),
        Suite::BestApprox => best_approx(params),
        Suite::RateBounds => rate_bounds(params),
        Suite::LatticePick => lattice_pick(params),
        Suite::GroupIdentities => group_identities(params),
        Suite::FirstReturnEquiv => first_return_equiv(params),
        Suite::SubshiftFace => subshift_face(params, ReportKind::Verification, suite.name()),
        Suite::Edge1d => edge_1d(params),
    }
}

pub fn run_suite_named(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    run_suite(name.parse()?, params)
}

/// Sweeps supporting one of the open statements. Reports are always
/// labelled as evidence; failures are counterexample candidates.
pub fn conjecture_harness(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    let h: Harness = name.parse()?;
    match h {
        Harness::RationalZero => rational_zero(params, ReportKind::Evidence, h.name()),
        Harness::RationalDependenceFacet => rational_dependence(params),
        Harness::PeriodicNumberField => periodic_number_field(params),
        Harness::SubshiftFace => subshift_face(params, ReportKind::Evidence, h.name()),
    }
}

fn err_text(e: Error) -> String {
    e.to_string()
}

fn is_interior(p: &ProjPoint<Rational>) -> bool {
    let c = p.coords();
    let n = p.dim();
    c[n - 1].is_positive() && c[0] < c[n] && (1..n).all(|i| c[i] < c[i - 1])
}

/// Checks an exact orbit reached zero with the last coordinate strictly
/// decreasing out of every interior state.
fn collapse_check(o: &Orbit<Rational>) -> std::result::Result<(), String> {
    if o.itinerary.status != OrbitStatus::ReachedZero {
        return Err(format!("status {:?} after {} steps", o.itinerary.status, o.itinerary.symbols.len()));
    }
    for w in o.states.windows(2) {
        if is_interior(&w[0]) && w[1].last() >= w[0].last() {
            return Err(format!("no decrease from {} to {}", w[0], w[1]));
        }
    }
    Ok(())
}

fn rational_zero(params: &SuiteParams, kind: ReportKind, name: &str) -> Result<VerificationReport> {
    let dim = params.dim.unwrap_or(2);
    let sys = monkemeyer_matrices(dim)?;
    let max_den = params.max_den.unwrap_or(if dim <= 2 { 20 } else { 10 });
    let cap = params.steps.unwrap_or(10_000);
    let mut rb = ReportBuilder::new(name, kind);
    let mut seen = HashSet::new();
    let mut longest = 0usize;
    for d in 1..=max_den {
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..dim {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    let hi = t.last().copied().unwrap_or(d);
                    (0..=hi).map(move |x| {
                        let mut u = t.clone();
                        u.push(x);
                        u
                    })
                })
                .collect();
        }
        for t in tuples {
            let p = ProjPoint::from_ints(&t.iter().copied().chain([d]).collect::<Vec<_>>())?;
            if !seen.insert(p.clone()) {
                continue;
            }
            let outcome = orbit(&sys, &p, cap).map_err(err_text).and_then(|o| {
                longest = longest.max(o.itinerary.symbols.len());
                collapse_check(&o)
            });
            rb.case(p.to_string(), outcome);
        }
    }
    rb.note("dim", dim);
    rb.note("max_den", max_den);
    rb.note("max_steps_to_zero", longest);
    Ok(rb.finish())
}

/// Problems found while scanning one hull, if any.
fn hull_problems(m: &IntMat, bound: i64) -> Result<Option<String>> {
    let scan = scan_hull(m, bound)?;
    if !scan.methods_agree() {
        return Ok(Some(format!("methods disagree on {m}")));
    }
    let extra = scan.non_vertex();
    if !extra.is_empty() {
        return Ok(Some(format!("non-vertex lattice points {:?} in {m}", &extra[..extra.len().min(4)])));
    }
    Ok(None)
}

/// Lattice points of the hull of `S` (and of its embedding one dimension up
/// for 2×2 input) must be vertices only, by two independent methods.
pub fn best_approx_verify(s: &IntMat, scan_bound: i64) -> Result<VerificationReport> {
    let det = s.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det));
    }
    let mut rb = ReportBuilder::new("best-approx", ReportKind::Verification);
    let mut mats = vec![s.clone()];
    if s.size() == 2 {
        mats.push(embed(s, 2)?);
    }
    for m in mats {
        let out = hull_problems(&m, scan_bound)?;
        rb.case(m.to_string(), out.map_or(Ok(()), Err));
    }
    Ok(rb.finish())
}

fn word_text(w: &[Symbol]) -> String {
    w.iter().map(Symbol::to_string).collect::<Vec<_>>().join(",")
}

fn prefix_problems(sys: &MapSystem, word: &[Symbol], bound: i64) -> Result<Option<String>> {
    let simplexes = match approx_simplexes(sys, word) {
        Ok(s) => s,
        Err(e) => return Ok(Some(e.to_string())),
    };
    for (m, s) in simplexes.iter().enumerate() {
        if !s.det().abs().is_one() {
            return Ok(Some(format!("|det| = {} at m = {}", s.det().abs(), m + 1)));
        }
        if let Some(p) = hull_problems(s.matrix(), bound)? {
            return Ok(Some(format!("m = {}: {p}", m + 1)));
        }
    }
    Ok(None)
}

fn best_approx(params: &SuiteParams) -> Result<VerificationReport> {
    let samples = params.samples.unwrap_or(100);
    let bound = params.bound.unwrap_or(1000);
    let mut rng = params.rng();
    let systems = [monkemeyer_matrices(1)?, monkemeyer_matrices(2)?];
    let mut rb = ReportBuilder::new("best-approx", ReportKind::Verification);
    let mut matrices = 0usize;
    for i in 0..samples {
        let (sys, max_len) = if i % 2 == 0 { (&systems[0], 12) } else { (&systems[1], 10) };
        let len = rng.gen_range(1..=max_len);
        let word = symbol_word(&mut rng, sys.dim(), len, 5);
        matrices += len;
        let out = prefix_problems(sys, &word, bound)?;
        rb.case(format!("dim {} prefix {}", sys.dim(), word_text(&word)), out.map_or(Ok(()), Err));
    }
    rb.note("matrices_scanned", matrices);
    rb.note("scan_bound", bound);
    Ok(rb.finish())
}

fn rate_case<S: Scalar>(x: &S, n: usize) -> std::result::Result<(), String> {
    let bad: Vec<usize> =
        (1..=n).filter(|&k| !matches!(rate_bounds_check(x, k), Ok(true))).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("bounds fail at n = {bad:?}"))
    }
}

fn rate_bounds(params: &SuiteParams) -> Result<VerificationReport> {
    let n = params.n.unwrap_or(20);
    let mut rb = ReportBuilder::new("rate-bounds", ReportKind::Verification);
    if let Some(q) = &params.quad {
        if q.len() != 3 {
            return Err(Error::NotQuadratic);
        }
        let (lo, hi) = params.root_interval.clone().unwrap_or((int(0), int(1)));
        let k = NumberField::new(q.clone(), lo, hi)?;
        rb.case(format!("root of {:?}", q.iter().map(ToString::to_string).collect::<Vec<_>>()), rate_case(&k.generator(), n));
        return Ok(rb.finish());
    }
    let golden = NumberField::from_i64(&[-1, 1, 1], int(0), int(1))?;
    let silver = NumberField::from_i64(&[-1, 2, 1], int(0), int(1))?;
    rb.case("golden", rate_case(&golden.generator(), n));
    rb.case("sqrt2-1", rate_case(&silver.generator(), n));
    let mut rng = params.rng();
    for _ in 0..params.samples.unwrap_or(20) {
        let d = random_nonsquare(&mut rng, 2, 1000);
        let k = sqrt_frac_field(d)?;
        rb.case(format!("frac(sqrt {d})"), rate_case(&k.generator(), n));
    }
    Ok(rb.finish())
}

fn lattice_pick(params: &SuiteParams) -> Result<VerificationReport> {
    let samples = params.samples.unwrap_or(200);
    let bound = params.bound.unwrap_or(1000);
    let mut rng = params.rng();
    let mut rb = ReportBuilder::new("lattice-pick", ReportKind::Verification);
    for _ in 0..samples {
        let len = rng.gen_range(1..=12);
        let terms: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
        let cf = CFExpansion::finite(terms.clone());
        let outcome = (1..=len)
            .map(|m| {
                let s = approx_interval(&cf, m).map_err(err_text)?;
                match lattice_triangle_check(&s, bound) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(format!("m = {m}: lattice or Pick check failed for {s}")),
                    Err(e) => Err(e.to_string()),
                }
            })
            .collect::<std::result::Result<Vec<()>, String>>()
            .map(|_| ());
        rb.case(format!("{terms:?}"), outcome);
    }
    Ok(rb.finish())
}

fn random_letters<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
}

fn eq_case(got: &IntMat, want: &IntMat) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got}, expected {want}"))
    }
}

fn group_identities(params: &SuiteParams) -> Result<VerificationReport> {
    let samples = params.samples.unwrap_or(100);
    let s1 = monkemeyer_matrices(1)?;
    let g = Generators::new(&s1)?;
    let higher = [monkemeyer_matrices(2)?, monkemeyer_matrices(3)?];
    let mut rb = ReportBuilder::new("group-identities", ReportKind::Verification);
    rb.case("T = B A^-1 B^-1", eq_case(&t_from_generators(&g), &standard_t()));
    rb.case("S = (T A T)^-1", s_from_generators(&g).map_err(err_text).and_then(|s| eq_case(&s, &standard_s())));
    for sys in &higher {
        for k in 1..=10 {
            let sym = Symbol::a(k);
            let out = (|| -> Result<std::result::Result<(), String>> {
                Ok(eq_case(&embed(&s1.symbol_matrix(sym)?, sys.dim())?, &sys.symbol_matrix(sym)?))
            })()
            .unwrap_or_else(|e| Err(e.to_string()));
            rb.case(format!("phi(A{k}) in dim {}", sys.dim()), out);
        }
    }
    let mut rng = params.rng();
    for _ in 0..samples {
        let (w1, w2) = (random_letters(&mut rng, 8), random_letters(&mut rng, 8));
        let (m1, m2) = (g.eval(&w1), g.eval(&w2));
        let out = [2usize, 3]
            .iter()
            .map(|&d| -> std::result::Result<(), String> {
                let lhs = embed(&m1.mul(&m2), d).map_err(err_text)?;
                let rhs = embed(&m1, d).map_err(err_text)?.mul(&embed(&m2, d).map_err(err_text)?);
                eq_case(&lhs, &rhs)
            })
            .collect::<std::result::Result<Vec<()>, String>>()
            .map(|_| ());
        let show = |w: &[Letter]| w.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ");
        rb.case(format!("({}) * ({})", show(&w1), show(&w2)), out);
    }
    Ok(rb.finish())
}

fn first_return_equiv(params: &SuiteParams) -> Result<VerificationReport> {
    let dim = params.dim.unwrap_or(2);
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidParameter(format!("closed forms exist for dimensions 1 to 3, not {dim}")));
    }
    let sys = monkemeyer_matrices(dim)?;
    let samples = params.samples.unwrap_or(1000);
    let max_den = params.max_den.unwrap_or(1000);
    let mut rng = params.rng();
    let mut rb = ReportBuilder::new("first-return-equiv", ReportKind::Verification);
    let mut skipped = 0usize;
    while rb.total() < samples {
        let p = rational_point(&mut rng, dim, max_den);
        if p.is_vertex_zero() {
            continue;
        }
        let closed = return_step(&sys, &p)?;
        if closed.boundary {
            skipped += 1;
            continue;
        }
        let iterated = return_step_iterated(&sys, &p)?;
        let out = if closed == iterated {
            Ok(())
        } else {
            Err(format!(
                "closed {:?} -> {}, iterated {:?} -> {}",
                closed.symbol, closed.point, iterated.symbol, iterated.point
            ))
        };
        rb.case(p.to_string(), out);
    }
    rb.note("dim", dim);
    rb.note("boundary_skipped", skipped);
    Ok(rb.finish())
}


/// Itinerary prefix of `p`, stopping early once `stop` holds for the prefix.
fn prefix_until<S: Scalar>(
    sys: &MapSystem,
    p: &ProjPoint<S>,
    steps: usize,
    stop: impl Fn(&[Symbol]) -> bool,
) -> Result<Vec<Symbol>> {
    let mut cur = p.clone();
    let mut out = Vec::new();
    while out.len() < steps {
        let r = return_step(sys, &cur)?;
        let Some(s) = r.symbol else { break };
        out.push(s);
        if stop(&out) {
            break;
        }
        cur = r.point;
    }
    Ok(out)
}

fn subshift_face(params: &SuiteParams, kind: ReportKind, name: &str) -> Result<VerificationReport> {
    let sys = monkemeyer_matrices(3)?;
    let samples = params.samples.unwrap_or(200);
    let steps = params.steps.unwrap_or(50);
    let max_den = params.max_den.unwrap_or(1000);
    let mut rng = params.rng();
    let mut rb = ReportBuilder::new(name, kind);
    let faces = [Face::AB, Face::AC, Face::BC];
    for i in 0..samples {
        let face = faces[i % 3];
        let (x, y) = face_params(&mut rng, max_den);
        let p = face.point(&x, &y)?;
        let out = prefix_until(&sys, &p, steps, |_| false).map_err(err_text).and_then(|w| {
            if face.accepts(&w) {
                Ok(())
            } else {
                Err(format!("itinerary {} rejected from {face:?}", word_text(&w)))
            }
        });
        rb.case(format!("{face:?} {p}"), out);
    }
    let (_, roots) = biquadratic()?;
    for _ in 0..samples {
        let p = independent_quadratic_point(&mut rng, &roots)?;
        let interior = |w: &[Symbol]| matches!(facet_subshift_check(w), Ok(FacetClass::InteriorConsistent));
        let out = prefix_until(&sys, &p, steps, interior).map_err(err_text).and_then(|w| {
            match facet_subshift_check(&w).map_err(err_text)? {
                FacetClass::InteriorConsistent => Ok(()),
                c => Err(format!("itinerary {} classified {c:?}", word_text(&w))),
            }
        });
        rb.case(format!("interior {p}"), out);
    }
    rb.note("steps", steps);
    Ok(rb.finish())
}

fn edge_1d(params: &SuiteParams) -> Result<VerificationReport> {
    let sys = monkemeyer_matrices(2)?;
    let samples = params.samples.unwrap_or(100);
    let max_den = params.max_den.unwrap_or(1000);
    let mut rng = params.rng();
    let mut rb = ReportBuilder::new("edge-1d", ReportKind::Verification);
    for _ in 0..samples {
        let d = rng.gen_range(1..=max_den);
        let x = Rational::new(rng.gen_range(1..=d).into(), d.into());
        let out = (|| -> Result<std::result::Result<(), String>> {
            let want = gauss_step(&x)?.value;
            for y in [x.clone(), Rational::zero()] {
                let p = ProjPoint::new(vec![x.clone(), y.clone(), int(1)])?;
                let aff = return_step(&sys, &p)?.point.affine()?;
                if aff != [want.clone(), Rational::zero()] {
                    return Ok(Err(format!("G({x}, {y}) = ({}, {}), expected ({want}, 0)", aff[0], aff[1])));
                }
            }
            Ok(Ok(()))
        })()
        .unwrap_or_else(|e| Err(e.to_string()));
        rb.case(x.to_string(), out);
    }
    Ok(rb.finish())
}

fn orbit_dump<S: Scalar>(o: &Orbit<S>) -> String {
    format!(
        "symbols [{}], last state {}",
        word_text(&o.itinerary.symbols),
        o.states.last().map(ToString::to_string).unwrap_or_default()
    )
}

fn cubic_example() -> Result<(std::sync::Arc<NumberField>, NFElement)> {
    let k = NumberField::from_i64(&[-1, 3, 3, 1], int(0), int(1))?;
    let a = k.generator();
    Ok((k, a))
}

/// `(λ, λ/(1+λ))` with `λ³ + λ² − 1 = 0`.
pub fn b1_fixed_point() -> Result<ProjPoint<NFElement>> {
    let k = NumberField::from_i64(&[-1, 0, 1, 1], int(0), int(1))?;
    let l = k.generator();
    let one = k.constant(int(1));
    ProjPoint::new(vec![l.times(&l.plus(&one)), l.clone(), l.plus(&one)])
}

fn periodic_number_field(params: &SuiteParams) -> Result<VerificationReport> {
    let sys = monkemeyer_matrices(2)?;
    let steps = params.steps.unwrap_or(200);
    let (k, a) = cubic_example()?;
    let one = k.constant(int(1));
    let mut points = vec![
        ("(a, a^2)".to_string(), ProjPoint::new(vec![a.clone(), a.times(&a), one.clone()])?),
        ("(a, a/(1+a))".to_string(), ProjPoint::new(vec![a.times(&a.plus(&one)), a.clone(), a.plus(&one)])?),
    ];
    points.push(("B1 fixed point".to_string(), b1_fixed_point()?));
    let mut rb = ReportBuilder::new("periodic-number-field", ReportKind::Evidence);
    for (label, p) in points {
        let out = orbit(&sys, &p, steps).map_err(err_text).and_then(|o| match o.itinerary.status {
            OrbitStatus::Periodic { preperiod, period } => {
                rb.note(&label, format!("preperiod {preperiod}, period {period}"));
                Ok(())
            }
            s => Err(format!("candidate: {s:?} within {steps} steps; {}", orbit_dump(&o))),
        });
        rb.case(label, out);
    }
    Ok(rb.finish())
}

fn on_edge(p: &ProjPoint<NFElement>) -> bool {
    let c = p.coords();
    c[1].is_zero() || c[0] == c[1] || c[0] == c[2]
}

fn rational_dependence(params: &SuiteParams) -> Result<VerificationReport> {
    let sys = monkemeyer_matrices(2)?;
    let steps = params.steps.unwrap_or(60);
    let (k, a) = cubic_example()?;
    let mut rb = ReportBuilder::new("rational-dependence-facet", ReportKind::Evidence);
    // y = c·x + e with small rationals, x = α scaled into the triangle
    let mut cases: Vec<(String, ProjPoint<NFElement>)> = Vec::new();
    let two = k.constant(int(2));
    cases.push(("(2a, a, 2)".into(), ProjPoint::new(vec![a.scale(&int(2)), a.clone(), two])?));
    for (c, e) in [((1, 3), (0, 1)), ((2, 3), (0, 1)), ((1, 1), (-1, 10)), ((1, 2), (1, 20)), ((3, 4), (-1, 20))] {
        let cr = Rational::new(c.0.into(), c.1.into());
        let er = Rational::new(e.0.into(), e.1.into());
        let y = a.scale(&cr).plus(&k.constant(er.clone()));
        let p = ProjPoint::new(vec![a.clone(), y, k.constant(int(1))])?;
        if crate::gaussnd::in_base(&p)? {
            cases.push((format!("y = {cr}*x + {er}"), p));
        }
    }
    let mut first_hits = Vec::new();
    for (label, p) in cases {
        let out = orbit(&sys, &p, steps).map_err(err_text).and_then(|o| {
            match o.states.iter().position(on_edge) {
                Some(i) => {
                    first_hits.push(format!("{label}: step {i}"));
                    match o.itinerary.status {
                        OrbitStatus::Periodic { .. } => {
                            Err(format!("edge reached at step {i} but orbit became periodic; {}", orbit_dump(&o)))
                        }
                        _ => Ok(()),
                    }
                }
                None => Err(format!("candidate: no edge within {steps} steps; {}", orbit_dump(&o))),
            }
        });
        rb.case(label, out);
    }
    rb.note("edge_hits", first_hits.join("; "));
    rb.note("steps", steps);
    Ok(rb.finish())
}

/// Exact simplex from a prefix, for callers that only hold symbols.
pub fn prefix_simplex(sys: &MapSystem, word: &[Symbol]) -> Result<SimplexMat> {
    approx_simplexes(sys, word)?.pop().ok_or_else(|| Error::InvalidParameter("empty prefix".into()))
}

/// Terms of the 1-D expansion of `num/den` after an edge hit.
pub fn edge_expansion(num: &NFElement, den: &NFElement, terms: usize) -> Result<Vec<u64>> {
    Ok(cf_expand(&num.divide(den)?, terms)?.terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err(), Error::UnknownSuite("nope".into()));
        assert!(conjecture_harness("nope", &SuiteParams::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams { samples: Some(10), max_den: Some(8), ..SuiteParams::seeded(3) };
        for s in Suite::ALL {
            let r = run_suite(s, &p).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.total > 0);
        }
    }

    #[test]
    fn best_approx_examples() {
        let r = best_approx_verify(&IntMat::from_i64(&[&[2, 5], &[5, 12]]), 1000).unwrap();
        assert!(r.passed());
        assert_eq!(r.total, 2);
        let bad = IntMat::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert!(matches!(best_approx_verify(&bad, 10), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn harness_is_evidence() {
        let p = SuiteParams { max_den: Some(6), steps: Some(40), ..SuiteParams::default() };
        let r = conjecture_harness("rational-zero", &p).unwrap();
        assert_eq!(r.kind, ReportKind::Evidence);
        assert!(r.passed());
        let r = conjecture_harness("periodic-number-field", &p).unwrap();
        assert_eq!(r.kind, ReportKind::Evidence);
        assert!(r.summary.contains_key("(a, a^2)"), "{:?}", r.summary);
    }
}
