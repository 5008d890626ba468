//! Exhaustive cross-checks of the metric, digraph and isometry results on
//! a list of small fixtures. Every check yields one line per applicable
//! fixture; failures carry a counterexample payload.

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use super::{identity_between, qi_violation_scan, seeded_bijections};
use crate::cayley::{build_color_digraph, ColorDigraph};
use crate::error::Result;
use crate::group::{inverse_unchecked, GeneratedGroup, DEFAULT_AUTOMORPHISM_BOUND};
use crate::isometry::{
    color_permuting_auts, color_permuting_auts_bruteforce, color_preserving_auts_bruteforce,
    decompose_with_tables, is_isometry, isometries_between, isometries_exhaustive,
    left_translation, ColorPermutation, DEFAULT_BRUTE_FORCE_BOUND,
};
use crate::map::GroupMap;
use crate::metrics::{
    ball, metric_table, word_ball, BallSpec, CardinalNorms, MetricKind, MetricTable,
};

/// A group to verify. Infinite backends are evaluated on the word ball of
/// `ball_radius` around the identity.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub group: GeneratedGroup,
    pub alternate: Option<GeneratedGroup>,
    pub ball_radius: Option<u32>,
}

impl Fixture {
    pub fn finite(name: impl Into<String>, group: GeneratedGroup) -> Self {
        Fixture {
            name: name.into(),
            group,
            alternate: None,
            ball_radius: None,
        }
    }

    pub fn ball(name: impl Into<String>, group: GeneratedGroup, radius: u32) -> Self {
        Fixture {
            name: name.into(),
            group,
            alternate: None,
            ball_radius: Some(radius),
        }
    }

    /// A second generating set of the same group, used by the norm-axiom
    /// and bi-Lipschitz checks.
    pub fn with_alternate(mut self, alternate: GeneratedGroup) -> Self {
        self.alternate = Some(alternate);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub radius_cap: u32,
    pub brute_force_bound: usize,
    pub automorphism_bound: usize,
    pub seed: u64,
    pub random_maps: usize,
    #[serde(serialize_with = "super::ratio_str")]
    pub qi_k: Rational64,
    #[serde(serialize_with = "super::ratio_str")]
    pub qi_c: Rational64,
    pub qi_radii: Vec<u32>,
    pub max_ball_vertices: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            radius_cap: 512,
            brute_force_bound: DEFAULT_BRUTE_FORCE_BOUND,
            automorphism_bound: DEFAULT_AUTOMORPHISM_BOUND,
            seed: 0x5eed,
            random_maps: 100,
            qi_k: Rational64::from_integer(2),
            qi_c: Rational64::from_integer(3),
            qi_radii: vec![4, 10, 50, 100],
            max_ball_vertices: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckId {
    #[serde(rename = "NORM-AXIOMS")]
    NormAxioms,
    #[serde(rename = "DC-LE-CARD-S")]
    DcLeCardS,
    #[serde(rename = "DC-LE-DW")]
    DcLeDw,
    #[serde(rename = "THM31-ORACLE")]
    ColorOracle,
    #[serde(rename = "CAUT-EQ-LA")]
    CautEqLa,
    #[serde(rename = "PAUT-EQ-LATAU")]
    PautEqLaTau,
    #[serde(rename = "PAUT-ISOMETRY")]
    PautIsometry,
    #[serde(rename = "BILIP-BOUND")]
    BilipBound,
    #[serde(rename = "CYCLIC-NO-ISOMETRY")]
    CyclicNoIsometry,
    #[serde(rename = "DISCRETE-BALL")]
    DiscreteBall,
    #[serde(rename = "DECOMPOSE-ISOMETRY")]
    DecomposeIsometry,
    #[serde(rename = "QI-DIVERGENCE")]
    QiDivergence,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::NormAxioms,
        CheckId::DcLeCardS,
        CheckId::DcLeDw,
        CheckId::ColorOracle,
        CheckId::CautEqLa,
        CheckId::PautEqLaTau,
        CheckId::PautIsometry,
        CheckId::BilipBound,
        CheckId::CyclicNoIsometry,
        CheckId::DiscreteBall,
        CheckId::DecomposeIsometry,
        CheckId::QiDivergence,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::NormAxioms => "NORM-AXIOMS",
            CheckId::DcLeCardS => "DC-LE-CARD-S",
            CheckId::DcLeDw => "DC-LE-DW",
            CheckId::ColorOracle => "THM31-ORACLE",
            CheckId::CautEqLa => "CAUT-EQ-LA",
            CheckId::PautEqLaTau => "PAUT-EQ-LATAU",
            CheckId::PautIsometry => "PAUT-ISOMETRY",
            CheckId::BilipBound => "BILIP-BOUND",
            CheckId::CyclicNoIsometry => "CYCLIC-NO-ISOMETRY",
            CheckId::DiscreteBall => "DISCRETE-BALL",
            CheckId::DecomposeIsometry => "DECOMPOSE-ISOMETRY",
            CheckId::QiDivergence => "QI-DIVERGENCE",
        }
    }

    pub fn parse(text: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.as_str() == text)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The fixture exceeds a configured brute-force bound.
    #[serde(rename = "SKIP")]
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub fixture: String,
    pub status: CheckStatus,
    pub detail: String,
    pub counterexample: Option<Value>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.status, self.id, self.fixture, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
    }

    pub fn for_check(&self, id: CheckId) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(move |r| r.id == id)
    }
}

/// A fixture with its vertex set and both distance tables computed.
#[derive(Debug, Clone)]
pub struct PreparedFixture {
    pub name: String,
    pub group: GeneratedGroup,
    pub alternate: Option<GeneratedGroup>,
    pub word: MetricTable,
    pub cardinal: MetricTable,
    pub digraph: Option<ColorDigraph>,
}

impl PreparedFixture {
    fn vertices(&self) -> &[crate::group::Element] {
        self.cardinal.vertices()
    }

    fn is_finite(&self) -> bool {
        self.group.is_finite()
    }

    fn order(&self) -> usize {
        self.cardinal.len()
    }
}

pub fn prepare_fixture(fixture: &Fixture, config: &SuiteConfig) -> Result<PreparedFixture> {
    let group = &fixture.group;
    let vertices = match (group.is_finite(), fixture.ball_radius) {
        (true, None) => group.elements()?.to_vec(),
        (_, radius) => word_ball(group, &group.identity(), radius.unwrap_or(0))?,
    };
    let word = metric_table(group, &vertices, MetricKind::Word, config.radius_cap)?;
    let cardinal = metric_table(group, &vertices, MetricKind::Cardinal, config.radius_cap)?;
    let digraph = match group.is_finite() && fixture.ball_radius.is_none() {
        true => Some(build_color_digraph(group, None)?),
        false => None,
    };
    Ok(PreparedFixture {
        name: fixture.name.clone(),
        group: group.clone(),
        alternate: fixture.alternate.clone(),
        word,
        cardinal,
        digraph,
    })
}

/// Prepares every fixture and runs all checks. Results are ordered by
/// check, then by fixture.
pub fn run_verification_suite(fixtures: &[Fixture], config: &SuiteConfig) -> SuiteReport {
    let mut prepared = Vec::new();
    let mut broken = Vec::new();
    for fixture in fixtures {
        match prepare_fixture(fixture, config) {
            Ok(p) => prepared.push(p),
            Err(e) => broken.push((fixture.name.clone(), e.to_string())),
        }
    }
    let mut report = run_checks(&prepared, config);
    for (name, err) in broken {
        for id in CheckId::ALL {
            report.results.push(CheckResult {
                id,
                fixture: name.clone(),
                status: CheckStatus::Fail,
                detail: format!("fixture preparation failed: {err}"),
                counterexample: None,
            });
        }
    }
    report.results.sort_by_key(|r| r.id);
    report
}

pub fn run_checks(fixtures: &[PreparedFixture], config: &SuiteConfig) -> SuiteReport {
    let mut results = Vec::new();
    for id in CheckId::ALL {
        for fixture in fixtures {
            let outcome = match id {
                CheckId::NormAxioms => norm_axioms(fixture),
                CheckId::DcLeCardS => dc_le_card_s(fixture),
                CheckId::DcLeDw => dc_le_dw(fixture),
                CheckId::ColorOracle => color_oracle(fixture),
                CheckId::CautEqLa => caut_eq_la(fixture, config),
                CheckId::PautEqLaTau => paut_eq_latau(fixture, config),
                CheckId::PautIsometry => paut_isometry(fixture, config),
                CheckId::BilipBound => bilip_bound(fixture, config),
                CheckId::CyclicNoIsometry => cyclic_no_isometry(fixture, config),
                CheckId::DiscreteBall => discrete_ball(fixture, config),
                CheckId::DecomposeIsometry => decompose_isometry_check(fixture, config),
                CheckId::QiDivergence => qi_divergence(fixture, config),
            };
            let outcome = match outcome {
                Ok(o) => o,
                Err(e) => Some(Outcome::fail(format!("error: {e}"), Value::Null)),
            };
            if let Some(o) = outcome {
                results.push(CheckResult {
                    id,
                    fixture: fixture.name.clone(),
                    status: o.status,
                    detail: o.detail,
                    counterexample: o.counterexample,
                });
            }
        }
    }
    SuiteReport {
        config: config.clone(),
        results,
    }
}

struct Outcome {
    status: CheckStatus,
    detail: String,
    counterexample: Option<Value>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Option<Outcome> {
        Some(Outcome {
            status: CheckStatus::Pass,
            detail: detail.into(),
            counterexample: None,
        })
    }

    fn fail(detail: impl Into<String>, witness: Value) -> Outcome {
        Outcome {
            status: CheckStatus::Fail,
            detail: detail.into(),
            counterexample: Some(witness),
        }
    }

    fn skip(detail: impl Into<String>) -> Option<Outcome> {
        Some(Outcome {
            status: CheckStatus::Skipped,
            detail: detail.into(),
            counterexample: None,
        })
    }
}

type CheckOutcome = Result<Option<Outcome>>;

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn pair_witness(t: &MetricTable, x: usize, y: usize, extra: Value) -> Value {
    json!({"x": t.vertices()[x], "y": t.vertices()[y], "values": extra})
}

fn norm_axioms_for(
    group: &GeneratedGroup,
    vertices: &[crate::group::Element],
) -> Result<Option<Value>> {
    let mut norms = CardinalNorms::new(group)?;
    for g in vertices {
        let n = norms.norm(g)?;
        if (n == 0) != g.is_identity() {
            return Ok(Some(json!({"axiom": "positivity", "g": g, "norm": n})));
        }
        let ni = norms.norm(&inverse_unchecked(g))?;
        if ni != n {
            return Ok(Some(
                json!({"axiom": "inverse", "g": g, "norm": n, "inverse_norm": ni}),
            ));
        }
    }
    for g in vertices {
        for h in vertices {
            let gh = group.compose(g, h)?;
            let (a, b, c) = (norms.norm(g)?, norms.norm(h)?, norms.norm(&gh)?);
            if c > a + b {
                return Ok(Some(
                    json!({"axiom": "subadditivity", "g": g, "h": h, "norms": [a, b, c]}),
                ));
            }
        }
    }
    Ok(None)
}

fn norm_axioms(f: &PreparedFixture) -> CheckOutcome {
    let mut sets = vec![(&f.group, "S")];
    if let Some(alt) = &f.alternate {
        sets.push((alt, "T"));
    }
    for (group, label) in &sets {
        if let Some(w) = norm_axioms_for(group, f.vertices())? {
            return Ok(Some(Outcome::fail(
                format!("axiom fails for generating set {label}"),
                w,
            )));
        }
    }
    let n = f.order();
    Outcome::pass(format!(
        "{} elements, {} pairs, {} generating set(s)",
        n,
        n * n,
        sets.len()
    ))
    .map(Ok)
    .transpose()
}

fn dc_le_card_s(f: &PreparedFixture) -> CheckOutcome {
    let s = f.group.generators().len() as u32;
    for (x, y) in pairs(f.order()) {
        let d = f.cardinal.get(x, y);
        if d > s {
            return Ok(Some(Outcome::fail(
                format!("d_C = {d} > |S| = {s}"),
                pair_witness(&f.cardinal, x, y, json!({"d_C": d, "card_S": s})),
            )));
        }
    }
    Ok(Outcome::pass(format!(
        "max d_C = {} <= |S| = {s}",
        f.cardinal.diameter()
    )))
}

fn dc_le_dw(f: &PreparedFixture) -> CheckOutcome {
    let mut strict = 0;
    for (x, y) in pairs(f.order()) {
        let (c, w) = (f.cardinal.get(x, y), f.word.get(x, y));
        if c > w {
            return Ok(Some(Outcome::fail(
                format!("d_C = {c} > d_W = {w}"),
                pair_witness(&f.cardinal, x, y, json!({"d_C": c, "d_W": w})),
            )));
        }
        strict += usize::from(c < w);
    }
    Ok(Outcome::pass(format!(
        "{} pairs, {strict} strict",
        f.order() * f.order()
    )))
}

fn color_oracle(f: &PreparedFixture) -> CheckOutcome {
    let Some(d) = &f.digraph else { return Ok(None) };
    let v = f.vertices();
    for (x, y) in pairs(f.order()) {
        let colors = d.min_color_connectivity(&v[x], &v[y])?;
        let dc = f.cardinal.get(x, y);
        if colors != dc {
            return Ok(Some(Outcome::fail(
                format!("color count {colors} != d_C {dc}"),
                pair_witness(&f.cardinal, x, y, json!({"colors": colors, "d_C": dc})),
            )));
        }
    }
    Ok(Outcome::pass(format!(
        "{} pairs agree",
        f.order() * f.order()
    )))
}

fn translations(f: &PreparedFixture) -> Result<HashSet<GroupMap>> {
    f.vertices()
        .iter()
        .map(|a| left_translation(&f.group, a))
        .collect()
}

fn over_bound(f: &PreparedFixture, bound: usize) -> Option<Option<Outcome>> {
    if f.digraph.is_none() {
        return Some(None);
    }
    (f.order() > bound).then(|| {
        Outcome::skip(format!(
            "|G| = {} exceeds brute-force bound {bound}",
            f.order()
        ))
    })
}

fn caut_eq_la(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if let Some(o) = over_bound(f, config.brute_force_bound) {
        return Ok(o);
    }
    let d = f.digraph.as_ref().expect("finite fixture");
    let found: HashSet<GroupMap> = color_preserving_auts_bruteforce(d, config.brute_force_bound)?
        .into_iter()
        .collect();
    let expected = translations(f)?;
    if found != expected {
        let extra: Vec<&[usize]> = found
            .symmetric_difference(&expected)
            .map(GroupMap::images)
            .collect();
        return Ok(Some(Outcome::fail(
            format!(
                "{} color-preserving maps vs {} translations",
                found.len(),
                expected.len()
            ),
            json!({"symmetric_difference": extra}),
        )));
    }
    Ok(Outcome::pass(format!(
        "{} maps, all left translations",
        found.len()
    )))
}

fn paut_eq_latau(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if let Some(o) = over_bound(f, config.brute_force_bound) {
        return Ok(o);
    }
    let d = f.digraph.as_ref().expect("finite fixture");
    let brute: HashSet<(GroupMap, ColorPermutation)> =
        color_permuting_auts_bruteforce(d, config.brute_force_bound)?
            .into_iter()
            .collect();
    let constructive: HashSet<(GroupMap, ColorPermutation)> =
        color_permuting_auts(&f.group, d, config.automorphism_bound)?
            .into_iter()
            .collect();
    if brute != constructive {
        let diff: Vec<&[usize]> = brute
            .symmetric_difference(&constructive)
            .map(|(m, _)| m.images())
            .collect();
        return Ok(Some(Outcome::fail(
            format!(
                "brute force {} vs constructive {}",
                brute.len(),
                constructive.len()
            ),
            json!({"symmetric_difference": diff}),
        )));
    }
    Ok(Outcome::pass(format!(
        "{} color-permuting maps",
        brute.len()
    )))
}

fn paut_isometry(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if let Some(o) = over_bound(f, config.automorphism_bound) {
        return Ok(o);
    }
    let d = f.digraph.as_ref().expect("finite fixture");
    let maps = color_permuting_auts(&f.group, d, config.automorphism_bound)?;
    for (m, _) in &maps {
        if !is_isometry(m, &f.cardinal, &f.cardinal)? {
            return Ok(Some(Outcome::fail(
                "map is not a d_C isometry",
                json!({"map": m.images()}),
            )));
        }
    }
    Ok(Outcome::pass(format!("{} maps preserve d_C", maps.len())))
}

fn sandwich_fails(
    f: &GroupMap,
    from: &MetricTable,
    to: &MetricTable,
    k: u32,
) -> Option<(usize, usize)> {
    pairs(from.len()).find(|&(x, y)| {
        let a = from.get(x, y);
        let b = to.get(f.apply(x), f.apply(y));
        // a / k <= b <= k * a
        a > k * b || b > k * a
    })
}

fn bilip_bound(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    let maps = seeded_bijections(f.order(), config.random_maps, config.seed);
    let mut parts = Vec::new();
    if let Some(alt) = &f.alternate {
        let dt = metric_table(alt, f.vertices(), MetricKind::Cardinal, config.radius_cap)?;
        let k = (f.group.generators().len().max(alt.generators().len()) + 1) as u32;
        for m in &maps {
            if let Some((x, y)) = sandwich_fails(m, &dt, &f.cardinal, k) {
                return Ok(Some(Outcome::fail(
                    format!("d_S(f x, f y) outside [d_T/{k}, {k} d_T]"),
                    json!({"map": m.images(), "x": f.vertices()[x], "y": f.vertices()[y]}),
                )));
            }
        }
        parts.push(format!("S/T bound K = {k}"));
    }
    if f.is_finite() && f.digraph.is_some() {
        let k = f.word.diameter().max(1);
        for m in &maps {
            if let Some((x, y)) = sandwich_fails(m, &f.word, &f.cardinal, k) {
                return Ok(Some(Outcome::fail(
                    format!("d_C(f x, f y) outside [d_W/{k}, {k} d_W]"),
                    json!({"map": m.images(), "x": f.vertices()[x], "y": f.vertices()[y]}),
                )));
            }
        }
        parts.push(format!("word/cardinal K = diam = {k}"));
    }
    if parts.is_empty() {
        return Ok(None);
    }
    Ok(Outcome::pass(format!(
        "{} seeded maps (seed {}), {}",
        maps.len(),
        config.seed,
        parts.join(", ")
    )))
}

fn is_complete(f: &PreparedFixture) -> bool {
    f.is_finite() && f.group.generators().len() + 1 == f.order()
}

fn is_cyclic_single(f: &PreparedFixture) -> bool {
    f.digraph.is_some() && f.group.generators().len() == 1 && f.order() >= 4
}

fn cyclic_no_isometry(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if is_complete(f) {
        let id = GroupMap::identity(f.order());
        if !is_isometry(&id, &f.word, &f.cardinal)? {
            return Ok(Some(Outcome::fail(
                "identity is not an isometry d_W -> d_C",
                Value::Null,
            )));
        }
        let dec = decompose_with_tables(&id, &f.group, &f.cardinal, &f.word)?;
        if !dec.report.all_pass() {
            return Ok(Some(Outcome::fail(
                "identity decomposition fails",
                serde_json::to_value(&dec.report).expect("report serializes"),
            )));
        }
        return Ok(Outcome::pass(
            "S = G \\ {e}: identity is an isometry and decomposes",
        ));
    }
    if !is_cyclic_single(f) {
        return Ok(None);
    }
    if f.order() > config.brute_force_bound {
        return Ok(Outcome::skip(format!(
            "|G| = {} exceeds brute-force bound {}",
            f.order(),
            config.brute_force_bound
        )));
    }
    let found = isometries_exhaustive(&f.word, &f.cardinal, config.brute_force_bound)?;
    if let Some(m) = found.first() {
        return Ok(Some(Outcome::fail(
            format!("{} bijections are isometries", found.len()),
            json!({"map": m.images()}),
        )));
    }
    let total: usize = (1..=f.order()).product();
    Ok(Outcome::pass(format!(
        "0 of {total} bijections are isometries"
    )))
}

fn discrete_ball(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    let half = Rational64::new(1, 2);
    for kind in [MetricKind::Cardinal, MetricKind::Word] {
        for x in f.vertices() {
            let spec = BallSpec::new(x.clone(), half, kind)?;
            let b = ball(&f.group, &spec, f.vertices(), config.radius_cap)?;
            if b != [x.clone()] {
                return Ok(Some(Outcome::fail(
                    format!("{kind} ball of radius 1/2 is not a singleton"),
                    json!({"center": x, "ball": b}),
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} centers, both metrics",
        f.order()
    )))
}

fn decompose_isometry_check(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if let Some(o) = over_bound(f, config.brute_force_bound) {
        return Ok(o);
    }
    let isometries = isometries_between(&f.cardinal, &f.word, config.brute_force_bound)?;
    for t in &isometries {
        let dec = decompose_with_tables(t, &f.group, &f.cardinal, &f.word)?;
        if !dec.report.all_pass() {
            return Ok(Some(Outcome::fail(
                "decomposition report fails",
                json!({"map": t.images(), "report": dec.report}),
            )));
        }
    }
    Ok(Outcome::pass(format!(
        "{} isometries d_C -> d_W decomposed",
        isometries.len()
    )))
}

fn qi_divergence(f: &PreparedFixture, config: &SuiteConfig) -> CheckOutcome {
    if f.digraph.is_some() {
        return Ok(None);
    }
    let s = f.group.generators().len() as i64;
    let threshold = config.qi_k * (Rational64::from_integer(s) + config.qi_c);
    let e = f.group.identity();
    let mut scanned = Vec::new();
    let mut skipped = Vec::new();
    let mut radii: Vec<u32> = config.qi_radii.clone();
    radii.sort_unstable();
    radii.dedup();
    for (i, &r) in radii.iter().enumerate() {
        // Balls are nested, so every radius past an oversized one is skipped
        // without enumerating it.
        if !skipped.is_empty() {
            skipped.push(r);
            continue;
        }
        let vertices = word_ball(&f.group, &e, r)?;
        if vertices.len() > config.max_ball_vertices {
            skipped.push(r);
            continue;
        }
        let word = metric_table(&f.group, &vertices, MetricKind::Word, config.radius_cap)?;
        let cardinal = metric_table(&f.group, &vertices, MetricKind::Cardinal, config.radius_cap)?;
        let far = Rational64::from_integer(i64::from(word.diameter())) > threshold;
        let mut maps = vec![("identity".to_string(), identity_between(&word, &cardinal)?)];
        let seed = config.seed.wrapping_add(i as u64);
        maps.extend(
            seeded_bijections(vertices.len(), 1, seed)
                .into_iter()
                .map(|m| (format!("seeded:{seed}"), m)),
        );
        for (label, m) in maps {
            let report = qi_violation_scan(&m, config.qi_k, config.qi_c, &word, &cardinal)?;
            let violated = !report.violations.is_empty();
            // Far pairs force a violation for every map; with |S| = 1 the
            // identity also cannot violate below the threshold.
            let exact = s == 1 && label == "identity";
            if (far && !violated) || (exact && violated != far) {
                return Ok(Some(Outcome::fail(
                    format!(
                        "radius {r}, map {label}: diam_W {} vs K(|S|+c) = {threshold}, {} violations",
                        word.diameter(),
                        report.violations.len()
                    ),
                    json!({"radius": r, "map": label, "violations": report.violations.len()}),
                )));
            }
            if label == "identity" {
                scanned.push(format!("r={r}:{}", report.violations.len()));
            }
        }
    }
    let mut detail = format!(
        "evidence at K={}, c={}: identity violations {}",
        config.qi_k,
        config.qi_c,
        scanned.join(" ")
    );
    if !skipped.is_empty() {
        detail.push_str(&format!(
            "; radii {skipped:?} exceed {} vertices",
            config.max_ball_vertices
        ));
    }
    Ok(Outcome::pass(detail))
}
