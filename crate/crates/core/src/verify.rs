//! Exhaustive checks of the gadget and algorithm claims on concrete
//! instances.
//!
//! Every check returns a [`VerifyReport`]. Checks never take a reduction's
//! word for anything: bundle structure is read off the gadget edges, and
//! indicator predicates are recomputed from the source instance or from
//! the labels themselves.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::eval::{relational_satisfied_weight, satisfied_weight, Objective};
use crate::instance::{metrics, GugpInstance, Labeling, RelationalEdge, RelationalInstance};
use crate::rational::Rational;
use crate::reduce::{
    decode_label, labeling_to_tour, restate_nwa, strip_negative, tour_to_labeling, tsp_to_min_nwa,
    BundleMap, RepeatedInstance, TspInstance, TwoToTwoInstance,
};
use crate::solve::{
    brute_force, brute_force_relational, label_space, local_search_half, LocalSearchOptions,
};

/// Default bound on the number of cases a single check may enumerate.
pub const DEFAULT_CHECK_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// A counterexample: which bundle/edge/instance part, under which labels,
/// and the expected versus observed value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub id: usize,
    pub labels: Vec<usize>,
    pub expected: Rational,
    pub actual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub claim: String,
    pub verdict: Verdict,
    /// Sorted by `(id, labels)`; empty exactly when the verdict is PASS.
    pub witnesses: Vec<Witness>,
    pub cases: u64,
    /// Extra facts as `KEY=VALUE` pairs.
    pub facts: Vec<(String, String)>,
    /// Informational remarks; never affect the verdict.
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(claim: &str, mut witnesses: Vec<Witness>, cases: u64) -> Self {
        witnesses.sort();
        let verdict = if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerifyReport {
            claim: claim.to_string(),
            verdict,
            witnesses,
            cases,
            facts: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fact(mut self, key: &str, value: impl ToString) -> Self {
        self.facts.push((key.to_string(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn fact_value(&self, key: &str) -> Option<&str> {
        self.facts
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Stable `KEY=VALUE` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "CHECK={}", self.claim);
        let _ = writeln!(out, "CHECK_VERDICT={}", self.verdict.as_str());
        let _ = writeln!(out, "CHECK_CASES={}", self.cases);
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}={v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "NOTE={n}");
        }
        for w in &self.witnesses {
            let labels: Vec<String> = w.labels.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(
                out,
                "WITNESS={} labels={} expected={} actual={}",
                w.id,
                labels.join(","),
                w.expected,
                w.actual
            );
        }
        out
    }
}

/// Overall verdict and case count of several reports.
pub fn summarize(reports: &[VerifyReport]) -> (Verdict, u64) {
    let verdict = if reports.iter().all(VerifyReport::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    (verdict, reports.iter().map(|r| r.cases).sum())
}

/// Total label-pair cases of a bundle scan, checked against `cap`.
fn bundle_cases(g: &GugpInstance, bundles: &BundleMap, cap: u64) -> Result<u64> {
    let k2 = (g.k() as u64).saturating_mul(g.k() as u64);
    let cases = bundles
        .ranges()
        .iter()
        .map(|r| k2.saturating_mul(r.len() as u64))
        .fold(0u64, u64::saturating_add);
    if cases > cap {
        return Err(Error::capacity("bundle label-pair cases", cases, cap));
    }
    Ok(cases)
}

/// Every bundle must be a run of parallel edges sharing one oriented
/// endpoint pair, and the runs must cover the gadget.
fn bundle_endpoints(g: &GugpInstance, bundles: &BundleMap) -> Result<Vec<(usize, usize)>> {
    let checked = BundleMap::new(bundles.ranges().to_vec(), g.edges().len())?;
    checked
        .ranges()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let first = &g.edges()[r.start];
            if g.edges()[r.clone()]
                .iter()
                .any(|e| (e.u, e.v) != (first.u, first.v))
            {
                return Err(Error::Structure(format!("bundle {i} mixes endpoint pairs")));
            }
            Ok((first.u, first.v))
        })
        .collect()
}

/// Under every label pair, exactly one edge of each bundle is satisfied.
pub fn check_bundle_exactly_one(
    g: &GugpInstance,
    bundles: &BundleMap,
    cap: u64,
) -> Result<VerifyReport> {
    bundle_endpoints(g, bundles)?;
    let cases = bundle_cases(g, bundles, cap)?;
    let k = g.k();
    let mut witnesses = Vec::new();
    for (id, range) in bundles.ranges().iter().enumerate() {
        let edges = &g.edges()[range.clone()];
        for a in 1..=k {
            for b in 1..=k {
                let count = edges.iter().filter(|e| e.pi.at(a) == b).count();
                if count != 1 {
                    witnesses.push(Witness {
                        id,
                        labels: vec![a, b],
                        expected: Rational::one(),
                        actual: Rational::from(count as i64),
                    });
                }
            }
        }
    }
    Ok(VerifyReport::new("bundle-exactly-one", witnesses, cases))
}

/// Bundle unsatisfied weight is 1 where `expect_one(bundle, a, b)` holds and
/// 0 elsewhere.
pub fn check_indicator_weights<P>(
    g: &GugpInstance,
    bundles: &BundleMap,
    cap: u64,
    expect_one: P,
) -> Result<VerifyReport>
where
    P: Fn(usize, usize, usize) -> bool,
{
    bundle_endpoints(g, bundles)?;
    let cases = bundle_cases(g, bundles, cap)?;
    let k = g.k();
    let mut witnesses = Vec::new();
    for (id, range) in bundles.ranges().iter().enumerate() {
        let edges = &g.edges()[range.clone()];
        let total: Rational = edges.iter().map(|e| &e.weight).sum();
        for a in 1..=k {
            for b in 1..=k {
                let sat: Rational = edges
                    .iter()
                    .filter(|e| e.pi.at(a) == b)
                    .map(|e| &e.weight)
                    .sum();
                let actual = &total - sat;
                let expected = Rational::from(expect_one(id, a, b) as i64);
                if actual != expected {
                    witnesses.push(Witness {
                        id,
                        labels: vec![a, b],
                        expected,
                        actual,
                    });
                }
            }
        }
    }
    Ok(VerifyReport::new("indicator-weights", witnesses, cases))
}

/// Labels of a `3^l`-label gadget collide when their color tuples agree in
/// some coordinate.
pub fn coordinate_collision(l: usize) -> impl Fn(usize, usize, usize) -> bool {
    move |_, a, b| {
        decode_label(a, l)
            .iter()
            .zip(decode_label(b, l))
            .any(|(x, y)| *x == y)
    }
}

/// True when the label pair violates source edge `bundle` of a 2-to-2 game.
pub fn two2two_violation(source: &TwoToTwoInstance) -> impl Fn(usize, usize, usize) -> bool + '_ {
    move |bundle, a, b| !source.satisfies(bundle, a, b)
}

/// Gadget families with closed-form metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetFamily {
    /// Parallel-repetition gadget with `l` folds.
    Pwt1 { l: usize },
    /// 2-to-2 gadget on `[2k]`.
    PwtHalf { k: usize },
}

impl GadgetFamily {
    /// Builds a family from its tag (`pwt1` or `pwt-half`) and parameter.
    pub fn from_tag(tag: &str, param: usize) -> Result<Self> {
        match tag.parse::<FamilyTag>()? {
            FamilyTag::Pwt1 => Ok(GadgetFamily::Pwt1 { l: param }),
            FamilyTag::PwtHalf => Ok(GadgetFamily::PwtHalf { k: param }),
        }
    }

    /// Closed-form `(W+, W-, Σ, ratio)` for `edges` source edges.
    pub fn expected_metrics(self, edges: usize) -> (Rational, Rational, Rational, Rational) {
        let e = Rational::from(edges as i64);
        match self {
            GadgetFamily::Pwt1 { l } => {
                let t = 3i64.pow(l as u32);
                let d = 2i64.pow(l as u32);
                let w_plus = Rational::new(d * (t - d), t - 1) * &e;
                let w_minus = Rational::new(-(d - 1) * (t - d), t - 1) * &e;
                let sigma = Rational::new(t - d, t - 1) * &e;
                (
                    w_plus,
                    w_minus,
                    sigma,
                    Rational::one() - Rational::new(1, d),
                )
            }
            GadgetFamily::PwtHalf { k } => {
                let k = k as i64;
                let w_plus = Rational::new(4 * (k - 1), 2 * k - 1) * &e;
                let w_minus = Rational::new(-2 * (k - 1), 2 * k - 1) * &e;
                let sigma = Rational::new(2 * k - 2, 2 * k - 1) * &e;
                (w_plus, w_minus, sigma, Rational::new(1, 2))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum FamilyTag {
    Pwt1,
    PwtHalf,
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pwt1" => Ok(FamilyTag::Pwt1),
            "pwt-half" => Ok(FamilyTag::PwtHalf),
            other => Err(Error::Usage(format!("unknown gadget family {other:?}"))),
        }
    }
}

/// Exact comparison of the gadget's metrics with the family's closed forms.
pub fn check_gadget_metrics(
    g: &GugpInstance,
    family: GadgetFamily,
    source_edges: usize,
) -> VerifyReport {
    let m = metrics(g);
    let (w_plus, w_minus, sigma, ratio) = family.expected_metrics(source_edges);
    let actual_ratio = m.ratio.clone().unwrap_or_else(|| Rational::from(-1));
    let mut witnesses = Vec::new();
    for (id, (expected, actual)) in [
        (w_plus, m.w_plus.clone()),
        (w_minus, m.w_minus.clone()),
        (sigma, m.sigma.clone()),
        (ratio, actual_ratio),
    ]
    .into_iter()
    .enumerate()
    {
        if expected != actual {
            witnesses.push(Witness {
                id,
                labels: Vec::new(),
                expected,
                actual,
            });
        }
    }
    let ratio_text = m.ratio.map_or("UNDEFINED".to_string(), |r| r.to_string());
    VerifyReport::new("gadget-metrics", witnesses, 4)
        .fact("WPLUS", m.w_plus)
        .fact("WMINUS", m.w_minus)
        .fact("SIGMA", m.sigma)
        .fact("RATIO", ratio_text)
}

/// Source instance of a gadget, for the value-transfer identity.
#[derive(Debug, Clone, Copy)]
pub enum TransferSource<'a> {
    Repeated(&'a RepeatedInstance),
    TwoToTwo(&'a TwoToTwoInstance),
}

fn unit_weighted(inst: &RelationalInstance) -> RelationalInstance {
    let edges = inst
        .edges()
        .iter()
        .map(|e| RelationalEdge {
            weight: Rational::one(),
            ..e.clone()
        })
        .collect();
    RelationalInstance::new(
        inst.n(),
        inst.k1(),
        inst.k2(),
        inst.sides().map(<[_]>::to_vec),
        edges,
    )
    .expect("reweighting keeps the instance valid")
}

/// The gadget's exact MIN_PWT optimum equals
/// `(1 - source optimum) · |E_source| / Σ_gadget`, both sides by exhaustive
/// search. Source edges count once each.
pub fn check_value_transfer(
    source: TransferSource<'_>,
    gadget: &GugpInstance,
    cap: u64,
) -> Result<VerifyReport> {
    let src = match source {
        TransferSource::Repeated(r) => unit_weighted(r.instance()),
        TransferSource::TwoToTwo(t) => t.to_relational(true),
    };
    let edges = src.edges().len();
    let src_opt = brute_force_relational(&src, cap)?;
    let sigma = metrics(gadget).sigma;
    let gadget_opt = brute_force(gadget, Objective::MinPwt, cap)?;
    let expected = (Rational::one() - &src_opt.value) * Rational::from(edges as i64) / &sigma;
    let witnesses = if gadget_opt.value != expected {
        vec![Witness {
            id: 0,
            labels: gadget_opt.labeling.values().to_vec(),
            expected,
            actual: gadget_opt.value.clone(),
        }]
    } else {
        Vec::new()
    };
    Ok(VerifyReport::new(
        "value-transfer",
        witnesses,
        src_opt.visited + gadget_opt.visited,
    )
    .fact("SOURCE_VALUE", &src_opt.value)
    .fact("GADGET_VALUE", &gadget_opt.value))
}

fn holds(b: bool) -> &'static str {
    if b {
        "HOLDS"
    } else {
        "VIOLATED"
    }
}

/// Stripping negative edges moves the minimum unsatisfied weight by at most
/// `|W-|`: `W_G(f*) ≤ W_G'(f') ≤ W_G(f*) + |W-|`.
///
/// Both per-labeling inequalities behind it are asserted during the scan.
/// The normalized forms `Val(G') ≥ (1-ρ)Val(G)` and `Val(G') ≤ Val(G) + ρ`
/// are reported as facts; they need `Val(G) ≥ 0` and do not affect the
/// verdict.
pub fn check_strip_bounds(g: &GugpInstance, cap: u64) -> Result<VerifyReport> {
    let m = metrics(&g.clone());
    if !m.sigma.is_positive() {
        return Err(Error::ObjectiveMismatch(
            "strip bounds need positive total weight".into(),
        ));
    }
    let stripped = strip_negative(g)?;
    let neg_abs = m.w_minus.abs();
    let rho = m.ratio.clone().expect("positive total implies positive W+");
    let n = g.n();
    let k = g.k();
    let cases = label_space(&vec![k; n], cap)?;

    let total_g = g.total_weight();
    let total_s = stripped.total_weight();
    let mut witnesses = Vec::new();
    let mut best_g: Option<Rational> = None;
    let mut best_s: Option<Rational> = None;
    let mut f = vec![1usize; n];
    let mut index = 0usize;
    loop {
        let lab = Labeling::new(f.clone());
        let w_g = &total_g - satisfied_weight(g, &lab)?;
        let w_s = &total_s - satisfied_weight(&stripped, &lab)?;
        if w_s < w_g {
            witnesses.push(Witness {
                id: index,
                labels: f.clone(),
                expected: w_g.clone(),
                actual: w_s.clone(),
            });
        }
        if w_g < &w_s - &neg_abs {
            witnesses.push(Witness {
                id: index,
                labels: f.clone(),
                expected: &w_s - &neg_abs,
                actual: w_g.clone(),
            });
        }
        if best_g.as_ref().is_none_or(|b| w_g < *b) {
            best_g = Some(w_g);
        }
        if best_s.as_ref().is_none_or(|b| w_s < *b) {
            best_s = Some(w_s);
        }
        index += 1;
        let Some(v) = (0..n).rev().find(|&v| f[v] < k) else {
            break;
        };
        f[v] += 1;
        f[v + 1..].iter_mut().for_each(|x| *x = 1);
    }
    let w_opt = best_g.expect("at least one labeling");
    let w_strip = best_s.expect("at least one labeling");
    if w_strip < w_opt {
        witnesses.push(Witness {
            id: usize::MAX,
            labels: Vec::new(),
            expected: w_opt.clone(),
            actual: w_strip.clone(),
        });
    }
    if w_strip > &w_opt + &neg_abs {
        witnesses.push(Witness {
            id: usize::MAX,
            labels: Vec::new(),
            expected: &w_opt + &neg_abs,
            actual: w_strip.clone(),
        });
    }

    let val_g = &w_opt / &m.sigma;
    let val_s = &w_strip / &m.w_plus;
    let lower_bound = (Rational::one() - &rho) * &val_g;
    let upper_bound = &val_g + &rho;
    let lower_ok = val_s >= lower_bound;
    let upper_ok = val_s <= upper_bound;

    let mut report = VerifyReport::new("strip-bounds", witnesses, cases)
        .fact("W_OPT", &w_opt)
        .fact("W_STRIPPED_OPT", &w_strip)
        .fact("WMINUS_ABS", &neg_abs)
        .fact("VAL", &val_g)
        .fact("VAL_STRIPPED", &val_s)
        .fact("RHO", &rho)
        .fact("NORMALIZED_LOWER", holds(lower_ok))
        .fact("NORMALIZED_LOWER_BOUND", &lower_bound)
        .fact("NORMALIZED_UPPER", holds(upper_ok))
        .fact("NORMALIZED_UPPER_BOUND", &upper_bound);
    if !lower_ok || !upper_ok {
        report.notes.push(format!(
            "normalized bound violated with Val(G) = {val_g}; those bounds assume Val(G) >= 0 (informational)"
        ));
    }
    Ok(report)
}

/// Runs the local search and checks its guarantee: restated satisfied
/// weight at least half the total, no vertex left below half its incident
/// weight, and, when the label space is within `cap`, at least half the
/// exhaustive optimum.
pub fn check_half_guarantee(
    g: &GugpInstance,
    cap: u64,
    opts: &LocalSearchOptions,
) -> Result<VerifyReport> {
    let result = local_search_half(g, opts)?;
    let half = Rational::new(1, 2);
    let mut witnesses = Vec::new();
    let mut cases = 1;

    if result.value < half {
        witnesses.push(Witness {
            id: 0,
            labels: result.labeling.values().to_vec(),
            expected: half.clone(),
            actual: result.value.clone(),
        });
    }

    // recompute the stopping condition independently of the solver
    let restated = restate_nwa(g)?;
    for v in 0..g.n() {
        let (mut sat, mut tot) = (Rational::zero(), Rational::zero());
        for e in restated.edges().iter().filter(|e| e.u == v || e.v == v) {
            tot += &e.weight;
            if e.rel
                .contains(result.labeling.get(e.u), result.labeling.get(e.v))
            {
                sat += &e.weight;
            }
        }
        if Rational::from(2) * &sat < tot {
            witnesses.push(Witness {
                id: v + 1,
                labels: result.labeling.values().to_vec(),
                expected: &tot / Rational::from(2),
                actual: sat,
            });
        }
    }
    let total_restated = relational_satisfied_weight(&restated, &result.labeling)?;
    debug_assert_eq!(&total_restated / metrics(g).w_minus.abs(), result.value);

    let mut report_facts = vec![
        ("VALUE".to_string(), result.value.to_string()),
        ("ITERATIONS".to_string(), result.visited.to_string()),
        (
            "ITERATIONS_EXCEED_V".to_string(),
            ((result.visited > g.n() as u64) as u8).to_string(),
        ),
    ];
    let mut notes = Vec::new();
    match brute_force(g, Objective::MaxNwa, cap) {
        Ok(opt) => {
            cases += opt.visited;
            if Rational::from(2) * &result.value < opt.value || result.value > opt.value {
                witnesses.push(Witness {
                    id: usize::MAX,
                    labels: opt.labeling.values().to_vec(),
                    expected: &opt.value / Rational::from(2),
                    actual: result.value.clone(),
                });
            }
            report_facts.push(("OPTIMUM".to_string(), opt.value.to_string()));
        }
        Err(Error::Capacity { .. }) => {
            notes.push("optimum comparison skipped: label space exceeds cap".to_string());
        }
        Err(e) => return Err(e),
    }
    if result.visited > g.n() as u64 {
        notes.push(format!(
            "local search took {} iterations on {} vertices",
            result.visited,
            g.n()
        ));
    }

    let mut report = VerifyReport::new("half-guarantee", witnesses, cases);
    report.facts = report_facts;
    report.notes = notes;
    Ok(report)
}

/// The exhaustive TSP optimum equals the minimum satisfied-weight magnitude
/// of the reduced instance, and the two optimal witnesses translate into
/// each other.
pub fn check_tsp_equivalence(t: &TspInstance, cap: u64) -> Result<VerifyReport> {
    let (g, _) = tsp_to_min_nwa(t)?;
    let opt = brute_force(&g, Objective::MinNwa, cap)?;
    let (tour, tour_w) = t.optimal_tour();
    let min_sat = satisfied_weight(&g, &opt.labeling)?.abs();
    let mut witnesses = Vec::new();
    if min_sat != tour_w {
        witnesses.push(Witness {
            id: 0,
            labels: opt.labeling.values().to_vec(),
            expected: tour_w.clone(),
            actual: min_sat.clone(),
        });
    }
    // optimal labeling → tour
    match labeling_to_tour(t, &opt.labeling) {
        Ok(back) => {
            let w = t.tour_weight(&back)?;
            if w != min_sat {
                witnesses.push(Witness {
                    id: 1,
                    labels: back,
                    expected: min_sat.clone(),
                    actual: w,
                });
            }
        }
        Err(_) => witnesses.push(Witness {
            id: 1,
            labels: opt.labeling.values().to_vec(),
            expected: tour_w.clone(),
            actual: min_sat.clone(),
        }),
    }
    // optimal tour → labeling → same tour
    let f = tour_to_labeling(t, &tour)?;
    let f_w = satisfied_weight(&g, &f)?.abs();
    if f_w != tour_w || labeling_to_tour(t, &f)? != tour {
        witnesses.push(Witness {
            id: 2,
            labels: f.values().to_vec(),
            expected: tour_w.clone(),
            actual: f_w,
        });
    }
    let cases = opt.visited;
    let tour_text: Vec<String> = tour.iter().map(|v| v.to_string()).collect();
    Ok(VerifyReport::new("tsp-equivalence", witnesses, cases)
        .fact("TSP_OPT", &tour_w)
        .fact("MIN_SAT", &min_sat)
        .fact("TOUR", tour_text.join(",")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothness {
    pub eta: Rational,
    /// Left vertices with no incident edge.
    pub skipped: Vec<usize>,
}

/// Smoothness of a projection game: the largest fraction of a left
/// vertex's incident edges whose projection merges some pair of distinct
/// labels. Neighbors are uniform over incident edges (with multiplicity,
/// ignoring weights); the edge's `u` endpoint is the left vertex.
pub fn smoothness(inst: &RelationalInstance) -> Result<Smoothness> {
    let k1 = inst.k1();
    let mut by_left: Vec<Vec<Vec<usize>>> = vec![Vec::new(); inst.n()];
    for (i, e) in inst.edges().iter().enumerate() {
        let proj = e
            .rel
            .as_projection()
            .ok_or_else(|| Error::Shape(format!("relation on edge {i} is not a projection")))?;
        by_left[e.u].push(proj);
    }
    let mut eta = Rational::zero();
    let mut skipped = Vec::new();
    for (u, projections) in by_left.iter().enumerate() {
        let is_left = inst
            .sides()
            .is_none_or(|s| s[u] == crate::instance::Side::V);
        if !is_left {
            continue;
        }
        if projections.is_empty() {
            skipped.push(u);
            continue;
        }
        let degree = Rational::from(projections.len() as i64);
        for i in 1..=k1 {
            for j in i + 1..=k1 {
                let merged = projections.iter().filter(|p| p[i - 1] == p[j - 1]).count();
                let frac = Rational::from(merged as i64) / &degree;
                if frac > eta {
                    eta = frac;
                }
            }
        }
    }
    Ok(Smoothness { eta, skipped })
}

/// All exhaustive checks for a parallel-repetition gadget. The number of
/// folds is read from the gadget's label count; the source, when given,
/// adds the value-transfer check.
pub fn verify_pwt1_gadget(
    gadget: &GugpInstance,
    source: Option<&RepeatedInstance>,
    cap: u64,
) -> Result<Vec<VerifyReport>> {
    let l = fold_from_labels(gadget.k())?;
    let size = gadget.k();
    if !gadget.edges().len().is_multiple_of(size) {
        return Err(Error::Structure(format!(
            "{} edges do not split into bundles of {size}",
            gadget.edges().len()
        )));
    }
    let bundles = BundleMap::uniform(gadget.edges().len() / size, size);
    let mut reports = vec![
        check_bundle_exactly_one(gadget, &bundles, cap)?,
        check_indicator_weights(gadget, &bundles, cap, coordinate_collision(l))?,
        check_gadget_metrics(gadget, GadgetFamily::Pwt1 { l }, bundles.len()),
    ];
    if let Some(src) = source {
        if src.edge_count() != bundles.len() || src.fold() != l {
            return Err(Error::Structure(
                "source does not match the gadget's bundles".into(),
            ));
        }
        for (range, e) in bundles.ranges().iter().zip(src.instance().edges()) {
            let g = &gadget.edges()[range.start];
            if (g.u, g.v) != (e.u, e.v) {
                return Err(Error::Structure(
                    "gadget bundle endpoints differ from source edge".into(),
                ));
            }
        }
        match check_value_transfer(TransferSource::Repeated(src), gadget, cap) {
            Ok(r) => reports.push(r),
            Err(Error::Capacity { .. }) => {
                if let Some(last) = reports.last_mut() {
                    last.notes
                        .push("value transfer skipped: label space exceeds cap".into());
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(reports)
}

fn fold_from_labels(k: usize) -> Result<usize> {
    let mut l = 0;
    let mut p = 1;
    while p < k {
        p *= 3;
        l += 1;
    }
    if p != k || l == 0 {
        return Err(Error::Structure(format!(
            "label count {k} is not a power of 3"
        )));
    }
    Ok(l)
}

/// All exhaustive checks for a 2-to-2 gadget against its source. Value
/// transfer is included when both label spaces fit in `cap`, and noted as
/// skipped otherwise.
pub fn verify_pwt_half_gadget(
    gadget: &GugpInstance,
    source: &TwoToTwoInstance,
    cap: u64,
) -> Result<Vec<VerifyReport>> {
    let size = 2 * source.k();
    if gadget.k() != size || gadget.edges().len() != size * source.edges().len() {
        return Err(Error::Structure(
            "gadget shape does not match the 2-to-2 source".into(),
        ));
    }
    let bundles = BundleMap::uniform(source.edges().len(), size);
    let endpoints = bundle_endpoints(gadget, &bundles)?;
    if endpoints
        .iter()
        .zip(source.edges())
        .any(|(&(u, v), e)| (u, v) != (e.u, e.v))
    {
        return Err(Error::Structure(
            "gadget bundle endpoints differ from source edge".into(),
        ));
    }
    let mut reports = vec![
        check_bundle_exactly_one(gadget, &bundles, cap)?,
        check_indicator_weights(gadget, &bundles, cap, two2two_violation(source))?,
        check_gadget_metrics(
            gadget,
            GadgetFamily::PwtHalf { k: source.k() },
            source.edges().len(),
        ),
    ];
    match check_value_transfer(TransferSource::TwoToTwo(source), gadget, cap) {
        Ok(r) => reports.push(r),
        Err(Error::Capacity { .. }) => {
            if let Some(last) = reports.last_mut() {
                last.notes
                    .push("value transfer skipped: label space exceeds cap".into());
            }
        }
        Err(e) => return Err(e),
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{GugpEdge, RelationalEdge, Side};
    use crate::perm::{Permutation, Relation};
    use crate::reduce::{
        pwt1_gadget, repeat_max3cut, two2two_to_pwt_half, RepeatCaps, SimpleGraph, TwoToTwoEdge,
    };
    use std::sync::Arc;

    fn pwt1(g: &SimpleGraph, l: usize) -> (RepeatedInstance, GugpInstance, BundleMap) {
        let r = repeat_max3cut(g, l, &RepeatCaps::default()).unwrap();
        let (gadget, b) = pwt1_gadget(&r, &RepeatCaps::default()).unwrap();
        (r, gadget, b)
    }

    #[test]
    fn exactly_one_on_l1_gadget() {
        let (_, g, b) = pwt1(&SimpleGraph::new(2, [(0, 1)]).unwrap(), 1);
        let r = check_bundle_exactly_one(&g, &b, DEFAULT_CHECK_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 27);
    }

    #[test]
    fn two_identity_edges_fail_with_witness() {
        let id = Permutation::identity(2);
        let g = GugpInstance::new(
            2,
            2,
            vec![
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::one(),
                    pi: id.clone(),
                },
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::one(),
                    pi: id,
                },
            ],
        )
        .unwrap();
        let r = check_bundle_exactly_one(&g, &BundleMap::uniform(1, 2), 100).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = &r.witnesses[0];
        assert_eq!(w.labels, vec![1, 1]);
        assert_eq!(w.actual, 2);
        assert!(r
            .render()
            .contains("WITNESS=0 labels=1,1 expected=1/1 actual=2/1"));
    }

    #[test]
    fn indicator_l1_and_l2() {
        for l in [1, 2] {
            let (_, g, b) = pwt1(&SimpleGraph::new(2, [(0, 1)]).unwrap(), l);
            let r = check_indicator_weights(&g, &b, DEFAULT_CHECK_CAP, coordinate_collision(l))
                .unwrap();
            assert!(r.passed(), "{}", r.render());
        }
        // labels (1,1) at l = 1 → unsatisfied weight 1
        let (_, g, _) = pwt1(&SimpleGraph::new(2, [(0, 1)]).unwrap(), 1);
        let unsat = g.total_weight() - satisfied_weight(&g, &Labeling::new(vec![1, 1])).unwrap();
        assert_eq!(unsat, 1);
        // l = 2, colors (1,2) vs (1,3): one colliding coordinate
        let (_, g, _) = pwt1(&SimpleGraph::new(2, [(0, 1)]).unwrap(), 2);
        let f = Labeling::new(vec![
            crate::reduce::encode_label(&[1, 2]),
            crate::reduce::encode_label(&[1, 3]),
            1,
            1,
        ]);
        let sub = GugpInstance::new(4, 9, g.edges()[..9].to_vec()).unwrap();
        assert_eq!(sub.total_weight() - satisfied_weight(&sub, &f).unwrap(), 1);
    }

    #[test]
    fn indicator_pwt_half_hand_case() {
        let id = Permutation::identity(4);
        let src = TwoToTwoInstance::new(
            2,
            2,
            vec![TwoToTwoEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                pi_u: id.clone(),
                pi_v: id,
            }],
        )
        .unwrap();
        let (g, b) = two2two_to_pwt_half(&src).unwrap();
        let pred = two2two_violation(&src);
        assert!(pred(0, 1, 3));
        let r = check_indicator_weights(&g, &b, 1000, pred).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn metrics_closed_forms() {
        let (_, g, _) = pwt1(&SimpleGraph::complete(3), 1);
        let r = check_gadget_metrics(&g, GadgetFamily::Pwt1 { l: 1 }, 3);
        assert!(r.passed());
        assert_eq!(r.fact_value("SIGMA"), Some("3/2"));
        assert_eq!(r.fact_value("RATIO"), Some("1/2"));

        let (_, g, _) = pwt1(&SimpleGraph::complete(3), 2);
        let r = check_gadget_metrics(&g, GadgetFamily::Pwt1 { l: 2 }, 18);
        assert!(r.passed());
        assert_eq!(r.fact_value("SIGMA"), Some("45/4"));
        assert_eq!(r.fact_value("RATIO"), Some("3/4"));

        let (_, _, sigma, ratio) = GadgetFamily::PwtHalf { k: 3 }.expected_metrics(2);
        assert_eq!((sigma, ratio), (Rational::new(8, 5), Rational::new(1, 2)));

        // wrong family parameter fails
        let r = check_gadget_metrics(&g, GadgetFamily::Pwt1 { l: 1 }, 18);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(GadgetFamily::from_tag("pwt7", 1).is_err());
    }

    #[test]
    fn value_transfer_small_bases() {
        let (r, g, _) = pwt1(&SimpleGraph::complete(3), 1);
        let rep =
            check_value_transfer(TransferSource::Repeated(&r), &g, DEFAULT_CHECK_CAP).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.fact_value("SOURCE_VALUE"), Some("1/1"));
        assert_eq!(rep.fact_value("GADGET_VALUE"), Some("0/1"));

        let (r, g, _) = pwt1(&SimpleGraph::complete(4), 1);
        let rep =
            check_value_transfer(TransferSource::Repeated(&r), &g, DEFAULT_CHECK_CAP).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.fact_value("SOURCE_VALUE"), Some("5/6"));
        assert_eq!(rep.fact_value("GADGET_VALUE"), Some("1/3"));
    }

    fn mixed() -> GugpInstance {
        GugpInstance::new(
            2,
            2,
            vec![
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::one(),
                    pi: Permutation::identity(2),
                },
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::new(-1, 3),
                    pi: Permutation::new(vec![2, 1]).unwrap(),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn strip_counterexample_is_informational() {
        let r = check_strip_bounds(&mixed(), 100).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("W_OPT"), Some("-1/3"));
        assert_eq!(r.fact_value("W_STRIPPED_OPT"), Some("0/1"));
        assert_eq!(r.fact_value("VAL"), Some("-1/2"));
        assert_eq!(r.fact_value("VAL_STRIPPED"), Some("0/1"));
        assert_eq!(r.fact_value("NORMALIZED_UPPER"), Some("VIOLATED"));
        assert_eq!(r.fact_value("NORMALIZED_UPPER_BOUND"), Some("-1/6"));
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn strip_positive_instance_collapses() {
        let g = GugpInstance::new(
            2,
            2,
            vec![GugpEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                pi: Permutation::identity(2),
            }],
        )
        .unwrap();
        let r = check_strip_bounds(&g, 100).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("W_OPT"), r.fact_value("W_STRIPPED_OPT"));
    }

    #[test]
    fn half_guarantee_single_edge_and_contradiction() {
        let single = GugpInstance::new(
            2,
            2,
            vec![GugpEdge {
                u: 0,
                v: 1,
                weight: Rational::from(-1),
                pi: Permutation::identity(2),
            }],
        )
        .unwrap();
        let r = check_half_guarantee(&single, 1000, &LocalSearchOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("VALUE"), Some("1/1"));

        // π and its swap in parallel: every labeling violates exactly one
        let contradictory = GugpInstance::new(
            2,
            2,
            vec![
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::from(-1),
                    pi: Permutation::identity(2),
                },
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::from(-1),
                    pi: Permutation::new(vec![2, 1]).unwrap(),
                },
            ],
        )
        .unwrap();
        let r = check_half_guarantee(&contradictory, 1000, &LocalSearchOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("OPTIMUM"), Some("1/2"));
    }

    #[test]
    fn tsp_equivalence_small() {
        let unit = TspInstance::new(
            3,
            [
                (0, 1, Rational::one()),
                (0, 2, Rational::one()),
                (1, 2, Rational::one()),
            ],
        )
        .unwrap();
        let r = check_tsp_equivalence(&unit, DEFAULT_CHECK_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.fact_value("TSP_OPT"), Some("3/1"));
    }

    #[test]
    fn smoothness_examples() {
        // bijections → 0
        let ug = GugpInstance::new(
            3,
            3,
            vec![
                GugpEdge {
                    u: 0,
                    v: 1,
                    weight: Rational::one(),
                    pi: Permutation::new(vec![2, 3, 1]).unwrap(),
                },
                GugpEdge {
                    u: 1,
                    v: 2,
                    weight: Rational::one(),
                    pi: Permutation::identity(3),
                },
            ],
        )
        .unwrap();
        let s = smoothness(&ug.to_relational().unwrap()).unwrap();
        assert_eq!(s.eta, 0);
        assert_eq!(s.skipped, vec![2]);

        let sigma1 = Arc::new(Relation::new(2, 2, [(1, 1), (2, 1)]).unwrap());
        let sigma2 = Arc::new(Relation::new(2, 2, [(1, 1), (2, 2)]).unwrap());
        let sides = vec![Side::V, Side::W, Side::W];
        let edges = vec![
            RelationalEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                rel: sigma1,
            },
            RelationalEdge {
                u: 0,
                v: 2,
                weight: Rational::one(),
                rel: sigma2,
            },
        ];
        let inst = RelationalInstance::new(3, 2, 2, Some(sides), edges).unwrap();
        assert_eq!(smoothness(&inst).unwrap().eta, Rational::new(1, 2));

        let constant = Arc::new(Relation::new(3, 2, [(1, 1), (2, 1), (3, 1)]).unwrap());
        let inst = RelationalInstance::new(
            2,
            3,
            2,
            Some(vec![Side::V, Side::W]),
            vec![RelationalEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                rel: constant,
            }],
        )
        .unwrap();
        assert_eq!(smoothness(&inst).unwrap().eta, 1);

        let full = Arc::new(Relation::from_predicate(2, 2, |_, _| true));
        let inst = RelationalInstance::new(
            2,
            2,
            2,
            None,
            vec![RelationalEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                rel: full,
            }],
        )
        .unwrap();
        assert!(matches!(smoothness(&inst), Err(Error::Shape(_))));
    }
}
