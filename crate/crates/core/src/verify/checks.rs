//! Named verification checks and the registry that selects them.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::arc::trace_arc_apollonius;
use super::euclid::{dist, euclid_apollonius, euclid_viewing_angle, EuclidLocus};
use super::limit::{small_scale_rows, SweepRow, DEFAULT_SCALES};
use super::random::{
    random_circle_pair, random_euclidean_pair, random_spec, random_viewing_config, stream_salt,
};
use crate::apollonius::{
    apollonius_curve, canonical_foci, classify, coefficient_identity_residuals, curve_center_coeff,
    foci_form_coeff, reduction_count, sample_curve_points, sine_ratio, ApolloniusSpec, ConicTag,
    CurveKind,
};
use crate::equioptic::{equioptic_curve, viewing_angle, viewing_angle_oracle, Circle};
use crate::error::{Error, Result};
use crate::geometry::{distance, CurvatureSign, HomogeneousPoint};

/// Inputs shared by every check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub samples: usize,
    /// Geometries to exercise; both when `None`.
    pub geometry: Option<CurvatureSign>,
    /// Focal distance and ratio for the scale sweep.
    pub d: f64,
    pub k: f64,
    /// Added to every expected ratio. Nonzero values must make the ratio
    /// checks fail.
    pub perturbation: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 256,
            geometry: None,
            d: 1.0,
            k: 2.0,
            perturbation: 0.0,
        }
    }
}

impl CheckConfig {
    pub fn geometries(&self) -> Vec<CurvatureSign> {
        match self.geometry {
            Some(sign) => vec![sign],
            None => CurvatureSign::ALL.to_vec(),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(salt))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rows: Vec<SweepRow>,
}

/// Outcome of a set of checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, config: &CheckConfig) -> CheckReport;
}

/// Counts cases and failures; library errors count as failures.
struct Tally {
    cases: usize,
    failures: usize,
    max_residual: f64,
    tolerance: f64,
    notes: Vec<String>,
}

const MAX_NOTES: usize = 8;

impl Tally {
    fn new(tolerance: f64) -> Self {
        Self {
            cases: 0,
            failures: 0,
            max_residual: 0.0,
            tolerance,
            notes: Vec::new(),
        }
    }

    fn note(&mut self, text: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(text);
        }
    }

    /// A residual compared against the tolerance; NaN fails.
    fn residual(&mut self, label: impl FnOnce() -> String, r: f64) {
        self.cases += 1;
        if r.is_nan() {
            self.max_residual = f64::INFINITY;
        } else {
            self.max_residual = self.max_residual.max(r);
        }
        if !(r < self.tolerance) {
            self.failures += 1;
            let text = format!("{}: residual {r:e}", label());
            self.note(text);
        }
    }

    fn flag(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            let text = label();
            self.note(text);
        }
    }

    /// Unwraps a library result, recording an error as a failed case.
    fn take<T>(&mut self, label: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures += 1;
                let text = format!("{}: {e}", label());
                self.note(text);
                None
            }
        }
    }

    fn finish(self, name: &str, rows: Vec<SweepRow>) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            notes: self.notes,
            rows,
        }
    }
}

const RANDOM_SPECS: usize = 100;

fn specs(config: &CheckConfig, sign: CurvatureSign, count: usize) -> Vec<ApolloniusSpec> {
    let mut rng = config.rng(stream_salt(0, sign));
    (0..count).map(|_| random_spec(&mut rng, sign)).collect()
}

/// Every sample of a random curve has circumference ratio `k`.
pub struct RatioProperty;

impl Check for RatioProperty {
    fn name(&self) -> &'static str {
        "ratio-property"
    }
    fn description(&self) -> &'static str {
        "sampled curve points have S(d(A,P))/S(d(B,P)) = k"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-9);
        for sign in config.geometries() {
            for spec in specs(config, sign, RANDOM_SPECS) {
                let label = || format!("{sign} d={} k={}", spec.d(), spec.k());
                let Some(curve) = t.take(label, apollonius_curve(&spec)) else {
                    continue;
                };
                let Some(points) = t.take(label, sample_curve_points(&curve, config.samples))
                else {
                    continue;
                };
                let (a, b) = canonical_foci(&spec).points();
                let target = spec.k() + config.perturbation;
                let worst = points.iter().try_fold(0.0f64, |acc, p| {
                    Ok::<_, Error>(acc.max((sine_ratio(p, &a, &b, sign)? - target).abs()))
                });
                if let Some(w) = t.take(label, worst) {
                    t.flag(!points.is_empty(), || format!("{}: no samples", label()));
                    t.residual(label, w);
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

/// Focus identities and agreement of the two expressions for `c`.
pub struct CoefficientIdentity;

impl Check for CoefficientIdentity {
    fn name(&self) -> &'static str {
        "coefficient-identity"
    }
    fn description(&self) -> &'static str {
        "canonical foci satisfy the constant-term and x²-coefficient identities; both forms of c agree"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-12);
        for sign in config.geometries() {
            for spec in specs(config, sign, RANDOM_SPECS) {
                let label = || format!("{sign} d={} k={}", spec.d(), spec.k());
                let foci = canonical_foci(&spec);
                let (r1, r2) = coefficient_identity_residuals(foci.a, foci.b, spec.k(), sign);
                t.residual(label, r1);
                t.residual(label, r2);
                if let Some(c) = t.take(label, curve_center_coeff(&spec)) {
                    let from_foci = foci_form_coeff(&foci, spec.k(), sign);
                    t.residual(label, (from_foci - c).abs() / c.abs().max(1.0));
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

/// All canonical curves pass through the origin tangent to the y-axis.
pub struct ParabolicPencil;

impl Check for ParabolicPencil {
    fn name(&self) -> &'static str {
        "parabolic-pencil"
    }
    fn description(&self) -> &'static str {
        "canonical curves share the origin and the tangent x = 0 there"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-14);
        for sign in config.geometries() {
            for d in [0.4, 0.8, 1.2] {
                for j in 0..20 {
                    let k = 0.1 + 0.2 * j as f64;
                    let label = || format!("{sign} d={d} k={k}");
                    let Some(spec) = t.take(label, ApolloniusSpec::new(d, k, sign)) else {
                        continue;
                    };
                    let Some(curve) = t.take(label, apollonius_curve(&spec)) else {
                        continue;
                    };
                    let origin = HomogeneousPoint::origin();
                    t.residual(label, curve.residual(&origin));
                    let [gx, gy] = curve.chart_gradient(0.0, 0.0);
                    t.residual(label, gy.abs());
                    t.flag(gx != 0.0, || format!("{}: zero gradient", label()));
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

const CIRCLE_PAIRS: usize = 50;

/// Both circles are seen under equal angles from the equioptic curve.
pub struct EquiopticAngles;

impl Check for EquiopticAngles {
    fn name(&self) -> &'static str {
        "equioptic-angles"
    }
    fn description(&self) -> &'static str {
        "equal viewing angles and ratio S(r1)/S(r2) on equioptic samples"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-9);
        let mut seen = 0usize;
        for sign in config.geometries() {
            let mut rng = config.rng(stream_salt(100, sign));
            for _ in 0..CIRCLE_PAIRS {
                let [c1, c2] = random_circle_pair(&mut rng, sign);
                let label = || format!("{sign} {c1:?} {c2:?}");
                let Some(result) = t.take(label, equioptic_curve(&c1, &c2, sign)) else {
                    continue;
                };
                let Some(valid) = t.take(label, result.valid_samples(config.samples)) else {
                    continue;
                };
                seen += valid.len();
                let target = sign.s(c1.radius()) / sign.s(c2.radius()) + config.perturbation;
                let (mut angle_gap, mut ratio_gap) = (0.0f64, 0.0f64);
                for p in &valid {
                    let gaps = (|| {
                        Ok::<_, Error>((
                            (viewing_angle(p, &c1, sign)? - viewing_angle(p, &c2, sign)?).abs(),
                            (sine_ratio(p, c1.center(), c2.center(), sign)? - target).abs(),
                        ))
                    })();
                    if let Some((ga, gr)) = t.take(label, gaps) {
                        angle_gap = angle_gap.max(ga);
                        ratio_gap = ratio_gap.max(gr);
                    }
                }
                t.residual(label, angle_gap);
                t.residual(label, ratio_gap);
            }
        }
        t.flag(seen > 0, || "no valid samples on any pair".to_string());
        t.finish(self.name(), Vec::new())
    }
}

const VIEWING_CONFIGS: usize = 25;

/// Closed-form viewing angle against the tangent construction.
pub struct ViewingAngleOracle;

impl Check for ViewingAngleOracle {
    fn name(&self) -> &'static str {
        "viewing-angle-oracle"
    }
    fn description(&self) -> &'static str {
        "viewing-angle formula agrees with explicit tangent lines"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-6);
        for sign in config.geometries() {
            let mut rng = config.rng(stream_salt(200, sign));
            for _ in 0..VIEWING_CONFIGS {
                let (p, circle) = random_viewing_config(&mut rng, sign);
                let label = || format!("{sign} P={:?} {circle:?}", p.to_chart());
                let gap = (|| {
                    Ok::<_, Error>(
                        (viewing_angle(&p, &circle, sign)?
                            - viewing_angle_oracle(&p, &circle, sign)?)
                        .abs(),
                    )
                })();
                if let Some(g) = t.take(label, gap) {
                    t.residual(label, g);
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

const CLASSIFICATION_SPECS: usize = 1000;

/// Hyperbolic classification: fixed cases and solver-vs-reduction agreement.
pub struct Classification;

impl Check for Classification {
    fn name(&self) -> &'static str {
        "classification"
    }
    fn description(&self) -> &'static str {
        "hyperbolic type from absolute intersections matches the |c| vs 1/2 reduction"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(0.5);
        let h = CurvatureSign::Hyperbolic;
        if config.geometry == Some(CurvatureSign::Elliptic) {
            let curve = apollonius_curve(
                &ApolloniusSpec::new(0.8, 0.5, CurvatureSign::Elliptic).expect("valid"),
            );
            let class = curve.as_ref().map_err(Clone::clone).and_then(classify);
            t.flag(class.is_ok_and(|c| c.tag == ConicTag::Ellipse), || {
                "elliptic curve not an ellipse".to_string()
            });
            return t.finish(self.name(), Vec::new());
        }
        let fixed = [
            (0.65, 2.0, ConicTag::Ellipse),
            (1.4, 0.3, ConicTag::SemiHyperbola),
            (0.75f64.asinh(), 0.5, ConicTag::Paracycle),
        ];
        for (d, k, expected) in fixed {
            let label = || format!("d={d} k={k}");
            let class = ApolloniusSpec::new(d, k, h)
                .and_then(|s| apollonius_curve(&s))
                .and_then(|c| classify(&c));
            if let Some(class) = t.take(label, class) {
                t.flag(class.tag == expected, || {
                    format!("{}: got {}, want {expected}", label(), class.tag)
                });
            }
        }
        let mut rng = config.rng(300);
        for _ in 0..CLASSIFICATION_SPECS {
            let spec = random_spec(&mut rng, h);
            let label = || format!("d={} k={}", spec.d(), spec.k());
            let Some(curve) = t.take(label, apollonius_curve(&spec)) else {
                continue;
            };
            let Some(c) = t.take(label, curve_center_coeff(&spec)) else {
                continue;
            };
            let solver = crate::apollonius::absolute_intersections(curve.matrix());
            let reduction = reduction_count(c);
            t.residual(label, f64::from(solver.abs_diff(reduction)));
        }
        t.finish(self.name(), Vec::new())
    }
}

/// `k = 1` gives the bisector; equal radii give the equidistant line.
pub struct LineCase;

const LINE_SAMPLES: usize = 64;

impl Check for LineCase {
    fn name(&self) -> &'static str {
        "line-case"
    }
    fn description(&self) -> &'static str {
        "k = 1 yields x = 0; equal-radius circles yield their equidistant line"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-10);
        for sign in config.geometries() {
            let label = || format!("{sign} k=1");
            let curve = ApolloniusSpec::new(0.9, 1.0, sign).and_then(|s| apollonius_curve(&s));
            if let Some(curve) = t.take(label, curve) {
                let axis = curve.line().map(|u| u.vector().normalize());
                let is_axis = axis.is_some_and(|u| u.x.abs() == 1.0 && u.y == 0.0 && u.z == 0.0);
                t.flag(curve.kind() == CurveKind::Line && is_axis, || {
                    format!("{}: not x = 0", label())
                });
            }

            let mut rng = config.rng(stream_salt(400, sign));
            for _ in 0..10 {
                let [c1, c2] = random_circle_pair(&mut rng, sign);
                let c2 = Circle::new(*c2.center(), c1.radius(), sign).expect("radius valid");
                let label = || format!("{sign} {c1:?} {c2:?}");
                let Some(result) = t.take(label, equioptic_curve(&c1, &c2, sign)) else {
                    continue;
                };
                t.flag(result.is_line(), || format!("{}: not a line", label()));
                let Some(points) = t.take(label, result.samples(LINE_SAMPLES)) else {
                    continue;
                };
                t.flag(points.len() == LINE_SAMPLES, || {
                    format!("{}: {} samples", label(), points.len())
                });
                for p in &points {
                    let gap = (|| {
                        Ok::<_, Error>(
                            (distance(p, c1.center(), sign)? - distance(p, c2.center(), sign)?)
                                .abs(),
                        )
                    })();
                    if let Some(g) = t.take(label, gap) {
                        t.residual(label, g);
                    }
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

/// Magnified small configurations converge to the Euclidean circle.
pub struct SmallScale;

impl Check for SmallScale {
    fn name(&self) -> &'static str {
        "small-scale"
    }
    fn description(&self) -> &'static str {
        "deviation from the Euclidean circle decreases with scale and ends below 1e-4"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-4);
        let mut rows = Vec::new();
        for sign in config.geometries() {
            let label = || format!("{sign} d={} k={}", config.d, config.k);
            let Some(sweep) = t.take(
                label,
                small_scale_rows(config.d, config.k, sign, &DEFAULT_SCALES),
            ) else {
                continue;
            };
            let monotone = sweep.windows(2).all(|w| w[1].deviation < w[0].deviation);
            t.flag(monotone, || format!("{}: not monotone", label()));
            t.residual(label, sweep.last().map_or(f64::NAN, |r| r.deviation));
            rows.extend(sweep);
        }
        t.finish(self.name(), rows)
    }
}

const EUCLIDEAN_PAIRS: usize = 100;

/// Flat baseline: the Apollonius circle of the centres with `k = r₁/r₂` is
/// the equioptic curve.
pub struct EuclideanOracle;

impl Check for EuclideanOracle {
    fn name(&self) -> &'static str {
        "euclidean-oracle"
    }
    fn description(&self) -> &'static str {
        "equal Euclidean viewing angles on the Apollonius circle of the centres"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-10);
        let mut rng = config.rng(500);
        for _ in 0..EUCLIDEAN_PAIRS {
            let [c1, c2] = random_euclidean_pair(&mut rng);
            let label = || format!("{c1:?} {c2:?}");
            let locus = euclid_apollonius(c1.center, c2.center, c1.radius / c2.radius);
            let Some(EuclidLocus::Circle(circle)) = t.take(label, locus) else {
                continue;
            };
            for j in 0..LINE_SAMPLES {
                let p = circle.point_at(2.0 * PI * j as f64 / LINE_SAMPLES as f64);
                if dist(p, c1.center) < c1.radius {
                    continue;
                }
                let gap = (|| {
                    Ok::<_, Error>(
                        (euclid_viewing_angle(p, &c1)? - euclid_viewing_angle(p, &c2)?).abs(),
                    )
                })();
                if let Some(g) = t.take(label, gap) {
                    t.residual(label, g);
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

/// Distance-ratio locus traced by root finding, and both loci on the axis.
pub struct ArcTrace;

const TRACE_RAYS: usize = 32;

impl Check for ArcTrace {
    fn name(&self) -> &'static str {
        "arc-trace"
    }
    fn description(&self) -> &'static str {
        "traced distance-ratio roots have small residual; axis points match scalar solutions"
    }
    fn run(&self, config: &CheckConfig) -> CheckReport {
        let mut t = Tally::new(1e-10);
        for sign in config.geometries() {
            for spec in specs(config, sign, 10) {
                let label = || format!("{sign} d={} k={}", spec.d(), spec.k());
                let (a, b) = canonical_foci(&spec).points();
                let Some(rays) = t.take(
                    label,
                    trace_arc_apollonius(&a, &b, spec.k(), sign, TRACE_RAYS),
                ) else {
                    continue;
                };
                for ray in rays.iter().filter(|r| r.root_distance.is_some()) {
                    t.residual(label, ray.residual.abs());
                }
                // ray from A (at x = a > 0) towards B points along −x
                let toward_b = rays[TRACE_RAYS / 2];
                let expected = spec.k() * spec.d() / (1.0 + spec.k());
                t.residual(
                    label,
                    toward_b
                        .root_distance
                        .map_or(f64::NAN, |s| (s - expected).abs()),
                );

                let foci = canonical_foci(&spec);
                let f = |x: f64| {
                    let p = HomogeneousPoint::chart(x, 0.0);
                    sine_ratio(&p, &a, &b, sign).map(|r| r - spec.k())
                };
                let root = bisect(f, foci.b, foci.a);
                if let Some(x) = t.take(label, root) {
                    t.residual(label, x.abs());
                }
            }
        }
        t.finish(self.name(), Vec::new())
    }
}

/// Root of `f` in `(lo, hi)` by 200 bisection steps; `f` must change sign.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo + (hi - lo) * 1e-9)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Ordered set of checks addressed by name.
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self { checks: Vec::new() }
    }

    pub fn with_defaults() -> Self {
        let mut registry = Self::empty();
        let defaults: Vec<Box<dyn Check>> = vec![
            Box::new(RatioProperty),
            Box::new(CoefficientIdentity),
            Box::new(ParabolicPencil),
            Box::new(EquiopticAngles),
            Box::new(ViewingAngleOracle),
            Box::new(Classification),
            Box::new(LineCase),
            Box::new(SmallScale),
            Box::new(EuclideanOracle),
            Box::new(ArcTrace),
        ];
        for check in defaults {
            registry
                .register(check)
                .expect("default names are distinct");
        }
        registry
    }

    pub fn register(&mut self, check: Box<dyn Check>) -> Result<()> {
        if self.get(check.name()).is_some() {
            return Err(Error::DuplicateCheck(check.name().to_string()));
        }
        self.checks.push(check);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn run(&self, name: &str, config: &CheckConfig) -> Result<CheckReport> {
        let check = self
            .get(name)
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
        Ok(check.run(config))
    }

    /// Runs the named checks, or all of them for an empty list.
    pub fn run_suite(&self, names: &[&str], config: &CheckConfig) -> Result<SuiteReport> {
        let selected: Vec<&dyn Check> = if names.is_empty() {
            self.checks.iter().map(|c| c.as_ref()).collect()
        } else {
            names
                .iter()
                .map(|n| {
                    self.get(n)
                        .ok_or_else(|| Error::UnknownCheck(n.to_string()))
                })
                .collect::<Result<_>>()?
        };
        let checks: Vec<CheckReport> = selected.iter().map(|c| c.run(config)).collect();
        Ok(SuiteReport {
            seed: config.seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        })
    }
}
