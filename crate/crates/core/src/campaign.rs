//! Reproducible computations with machine-readable reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebraic::{family_roots, growth_rate, xi, xi_polynomial, DEFAULT_EPS};
use crate::class::{census, compute_basis, ClassSpec, CENSUS_BOUND};
use crate::encoding::{build_automaton, gf_from_automaton};
use crate::error::{Error, Result};
use crate::perm::{sum_indecomposables, Permutation};
use crate::poly::IntPoly;
use crate::rational::si_gf;
use crate::reconstruction::{taper_counterexample, verify_reconstruction, verify_taper};
use crate::sequences::{self, classify, in_sum_sub_u, Position, Realizability, SumSequence};

/// Longest tail period accepted when reading a sequence off a generating
/// function.
const MAX_PERIOD: usize = 12;

/// Sum indecomposable sequence of a sum closed class, read off the
/// generating function of its insertion encoding.
pub fn si_sequence_by_encoding(
    spec: &ClassSpec,
) -> Result<(SumSequence, crate::rational::RationalFunction)> {
    let automaton = build_automaton(spec)?;
    let g = si_gf(&gf_from_automaton(&automaton)?)?;
    let s = SumSequence::from_gf(&g, MAX_PERIOD).ok_or_else(|| {
        Error::Series(format!("{g} is not eventually periodic with small period"))
    })?;
    Ok((s, g))
}

/// What the search did with a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    /// No entry above 5 through the census length; the encoding gives the
    /// full sequence.
    Encoded,
    /// An entry above 5 after a 5 at `length`: every basis extension by a
    /// sum indecomposable member of that length is searched.
    Branched { length: usize },
    /// An entry above 5 with no earlier 5.
    Counterexample,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchNode {
    pub basis: ClassSpec,
    pub census: Vec<u64>,
    pub outcome: SearchOutcome,
    /// The full sequence, for encoded classes.
    pub sequence: Option<SumSequence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub initial_classes: usize,
    pub nodes: Vec<SearchNode>,
}

impl SearchResult {
    pub fn encoded(&self) -> impl Iterator<Item = &SearchNode> {
        self.nodes
            .iter()
            .filter(|n| n.outcome == SearchOutcome::Encoded)
    }
}

/// The 30 classes `Av(τ, a, b)` with `τ` sum indecomposable of length 3
/// and `a, b` two of the five sum indecomposable members of length 4 of
/// `Av(τ)`; exactly the sum closed classes starting `1,1,2,3` whose basis
/// has length at most 4.
pub fn initial_1123_classes() -> Result<Vec<ClassSpec>> {
    let mut out = Vec::new();
    for tau in sum_indecomposables(3) {
        let base = ClassSpec::new([tau.clone()]);
        let four = census(&base, 4)?.si_members(4).to_vec();
        for i in 0..four.len() {
            for j in i + 1..four.len() {
                out.push(ClassSpec::new([
                    tau.clone(),
                    four[i].clone(),
                    four[j].clone(),
                ]));
            }
        }
    }
    Ok(out)
}

fn visit(spec: &ClassSpec, max_len: usize) -> Result<(SearchNode, Vec<ClassSpec>)> {
    let c = census(spec, max_len)?;
    let si = c.si_sequence();
    let mut node = SearchNode {
        basis: spec.clone(),
        census: si.clone(),
        outcome: SearchOutcome::Encoded,
        sequence: None,
    };
    let Some(big) = si.iter().position(|&v| v > 5) else {
        node.sequence = Some(si_sequence_by_encoding(spec)?.0);
        return Ok((node, Vec::new()));
    };
    match si[..big].iter().position(|&v| v == 5) {
        None => {
            node.outcome = SearchOutcome::Counterexample;
            Ok((node, Vec::new()))
        }
        Some(i) => {
            let length = i + 1;
            node.outcome = SearchOutcome::Branched { length };
            let children = c
                .si_members(length)
                .iter()
                .map(|p| spec.extended([p.clone()]))
                .collect();
            Ok((node, children))
        }
    }
}

/// Breadth-first search over the initial classes and their branches,
/// visiting each class once; nodes are reported in basis order.
pub fn search_1123(max_len: usize) -> Result<SearchResult> {
    let initial = initial_1123_classes()?;
    let initial_classes = initial.len();
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut frontier: Vec<ClassSpec> = Vec::new();
    for spec in initial {
        if seen.insert(spec.basis().to_vec()) {
            frontier.push(spec);
        }
    }
    let mut nodes = Vec::new();
    while !frontier.is_empty() {
        let results: Vec<Result<(SearchNode, Vec<ClassSpec>)>> =
            frontier.par_iter().map(|s| visit(s, max_len)).collect();
        let mut next = Vec::new();
        for r in results {
            let (node, children) = r?;
            nodes.push(node);
            for child in children {
                if seen.insert(child.basis().to_vec()) {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    nodes.sort_by(|a, b| a.basis.basis().cmp(b.basis.basis()));
    Ok(SearchResult {
        initial_classes,
        nodes,
    })
}

/// Downward closed selections of sum indecomposable permutations with the
/// given counts by length, as levels indexed by length.
pub fn selections_with_counts(counts: &[usize]) -> Vec<Vec<Vec<Permutation>>> {
    fn extend(
        levels: &mut Vec<Vec<Permutation>>,
        counts: &[usize],
        out: &mut Vec<Vec<Vec<Permutation>>>,
    ) {
        let n = levels.len();
        if n > counts.len() {
            out.push(levels.clone());
            return;
        }
        let selected = |levels: &[Vec<Permutation>], p: &Permutation| {
            p.sum_components()
                .iter()
                .all(|c| levels.get(c.len()).is_some_and(|l| l.contains(c)))
        };
        let candidates: Vec<Permutation> = if n == 1 {
            vec![Permutation::identity(1)]
        } else {
            let mut c: BTreeSet<Permutation> = BTreeSet::new();
            for p in &levels[n - 1] {
                for q in p.extensions() {
                    if q.is_sum_indecomposable()
                        && q.children(false)
                            .expect("nonempty")
                            .iter()
                            .all(|ch| selected(levels, ch))
                    {
                        c.insert(q);
                    }
                }
            }
            c.into_iter().collect()
        };
        for choice in subsets(&candidates, counts[n - 1]) {
            levels.push(choice);
            extend(levels, counts, out);
            levels.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![Vec::new()], counts, &mut out);
    out
}

fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<T>> = subsets(&items[1..], k - 1);
    for s in &mut with {
        s.insert(0, items[0].clone());
    }
    with.extend(subsets(&items[1..], k));
    with
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSequence {
    pub basis: ClassSpec,
    pub sequence: SumSequence,
}

#[derive(Clone, Debug, Serialize)]
pub struct Search112344Result {
    pub classes: Vec<ClassSequence>,
}

impl Search112344Result {
    /// Classes with 5 sum indecomposable members of some length.
    pub fn with_five(&self) -> Vec<&ClassSequence> {
        self.classes
            .iter()
            .filter(|c| c.sequence.max_entry() >= 5)
            .collect()
    }
}

/// Every sum closed class with basis of length at most 6 whose sequence
/// starts `1,1,2,3,4,4`, with its full sequence from the encoding.
pub fn search_112344() -> Result<Search112344Result> {
    let selections = selections_with_counts(&[1, 1, 2, 3, 4, 4]);
    let classes: Vec<Result<ClassSequence>> = selections
        .par_iter()
        .map(|levels| {
            let basis = ClassSpec::new(sequences::sum_closure_basis(levels, 6));
            let (sequence, _) = si_sequence_by_encoding(&basis)?;
            Ok(ClassSequence { basis, sequence })
        })
        .collect();
    let mut classes = classes.into_iter().collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| a.basis.basis().cmp(b.basis.basis()));
    Ok(Search112344Result { classes })
}

/// The reproducible computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Campaign {
    ReconVerify,
    TaperVerify,
    Search1123,
    Search112344,
    Table1,
    Table2,
    Table3,
    Table4,
    XiBasis,
    Accumulation,
    Census,
    GrowthRate,
    Classify,
}

impl Campaign {
    pub const ALL: [Campaign; 13] = [
        Campaign::ReconVerify,
        Campaign::TaperVerify,
        Campaign::Search1123,
        Campaign::Search112344,
        Campaign::Table1,
        Campaign::Table2,
        Campaign::Table3,
        Campaign::Table4,
        Campaign::XiBasis,
        Campaign::Accumulation,
        Campaign::Census,
        Campaign::GrowthRate,
        Campaign::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::ReconVerify => "recon-verify",
            Campaign::TaperVerify => "taper-verify",
            Campaign::Search1123 => "search-1123",
            Campaign::Search112344 => "search-112344",
            Campaign::Table1 => "table1",
            Campaign::Table2 => "table2",
            Campaign::Table3 => "table3",
            Campaign::Table4 => "table4",
            Campaign::XiBasis => "xi-basis",
            Campaign::Accumulation => "accumulation",
            Campaign::Census => "census",
            Campaign::GrowthRate => "growth-rate",
            Campaign::Classify => "classify",
        }
    }

    /// The claim a campaign reproduces.
    pub fn anchor(self) -> &'static str {
        match self {
            Campaign::ReconVerify => "sum indecomposable permutations of length at least 5 are determined by their sum indecomposable children, except the two increasing oscillations",
            Campaign::TaperVerify => "taper bounds on sum indecomposable children hold at small lengths and fail for m = 5 at length 11",
            Campaign::Search1123 => "no sum closed class starting 1,1,2,3 has an entry above 5 before an entry equal to 5; the search encodes 178 classes",
            Campaign::Search112344 => "of the 173 classes starting 1,1,2,3,4,4 with basis length at most 6 only Av(321, 3412, 4123, 23451, 314625) and its inverse reach 5",
            Campaign::Table1 => "short legal sequences with growth rate at least xi",
            Campaign::Table2 => "long legal sequence families with growth rate at least xi",
            Campaign::Table3 => "realizable sequences below xi dominated by a short sequence",
            Campaign::Table4 => "realizable sequences below xi dominated by a long sequence",
            Campaign::XiBasis => "a finitely based class with sequence 1,1,2,4,3,3,2,1 has growth rate xi; checks the printed basis Av(231, 4132, 4213, 54312, 7612345, 81234567, 987654321) and a chain witness",
            Campaign::Accumulation => "growth rates of finitely based classes accumulate at xi from above",
            Campaign::Census => "counts of members and sum indecomposable members of a finitely based class",
            Campaign::GrowthRate => "growth rate from the generating function of a sequence or class",
            Campaign::Classify => "legality, realizability and position relative to xi of a sequence",
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown campaign {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CampaignParams {
    pub max_len: Option<usize>,
    pub eps: Option<f64>,
    pub basis: Option<ClassSpec>,
    pub seq: Option<SumSequence>,
    pub slow: bool,
}

impl CampaignParams {
    fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(n) = self.max_len {
            m.insert("max_len".into(), n.to_string());
        }
        if let Some(e) = self.eps {
            m.insert("eps".into(), format!("{e:e}"));
        }
        if let Some(b) = &self.basis {
            m.insert("basis".into(), b.to_string());
        }
        if let Some(s) = &self.seq {
            m.insert("seq".into(), s.to_string());
        }
        if self.slow {
            m.insert("slow".into(), "true".into());
        }
        m
    }

    fn eps(&self) -> Result<f64> {
        match self.eps {
            Some(e) if !(e > 0.0 && e < 1.0) => Err(Error::InvalidArgument(format!(
                "eps must lie in (0, 1), got {e}"
            ))),
            Some(e) => Ok(e),
            None => Ok(DEFAULT_EPS),
        }
    }

    fn digits(&self) -> Result<usize> {
        Ok(((-self.eps()?.log10()).ceil() as usize).clamp(1, 30))
    }

    fn max_len(&self, default: usize, lo: usize, hi: usize) -> Result<usize> {
        let n = self.max_len.unwrap_or(default);
        if n < lo || n > hi {
            return Err(Error::InvalidArgument(format!(
                "--max-len must lie in {lo}..={hi}, got {n}"
            )));
        }
        Ok(n)
    }

    fn require_seq(&self) -> Result<&SumSequence> {
        self.seq
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("this campaign needs --seq".into()))
    }

    fn require_basis(&self) -> Result<&ClassSpec> {
        self.basis
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("this campaign needs --basis".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a campaign. The content depends only on the campaign and
/// its parameters, never on timing or the number of workers.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub artifacts: Value,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// CSV form: the campaign's table when it has one, otherwise the checks.
    pub fn to_csv(&self) -> String {
        if let Some(csv) = &self.csv {
            return csv.clone();
        }
        let mut out = String::from("check,passed,detail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},\"{}\"\n",
                c.name,
                c.passed,
                c.detail.replace('"', "\"\"")
            ));
        }
        out
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs a campaign. Parameter errors are returned as `Err`; failed
/// verifications give a report with status `fail`.
pub fn run_campaign(campaign: Campaign, params: &CampaignParams) -> Result<CampaignReport> {
    let mut b = Builder { checks: Vec::new() };
    let mut csv = None;
    let artifacts = match campaign {
        Campaign::ReconVerify => recon_verify(&mut b, params)?,
        Campaign::TaperVerify => taper(&mut b)?,
        Campaign::Search1123 => search_1123_report(&mut b, params)?,
        Campaign::Search112344 => search_112344_report(&mut b)?,
        Campaign::Table1 | Campaign::Table2 | Campaign::Table3 | Campaign::Table4 => {
            let t = match campaign {
                Campaign::Table1 => 1,
                Campaign::Table2 => 2,
                Campaign::Table3 => 3,
                _ => 4,
            };
            let rows = sequences::table(t)?;
            csv = Some(sequences::table_csv(&rows));
            table_report(&mut b, t, &rows)
        }
        Campaign::XiBasis => xi_basis(&mut b, params)?,
        Campaign::Accumulation => accumulation(&mut b, params)?,
        Campaign::Census => {
            let spec = params.require_basis()?;
            let c = census(spec, params.max_len(10, 1, CENSUS_BOUND)?)?;
            let si: Vec<u32> = c.si_sequence().iter().map(|&v| v as u32).collect();
            if spec.is_sum_closed() {
                b.check(
                    "legal",
                    sequences::is_legal(&SumSequence::finite(si)),
                    "sum indecomposable counts obey the taper rules",
                );
            }
            csv = Some(c.to_csv());
            json!({ "basis": spec, "sum_closed": spec.is_sum_closed(), "members": c.members, "sum_indecomposable": c.sum_indecomposable })
        }
        Campaign::GrowthRate => growth_report(&mut b, params)?,
        Campaign::Classify => classify_report(&mut b, params)?,
    };
    let status = if b.checks.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CampaignReport {
        campaign: campaign.name().into(),
        anchor: campaign.anchor().into(),
        parameters: params.to_map(),
        status,
        checks: b.checks,
        artifacts,
        csv,
    })
}

/// Longest length checked without `slow`.
pub const RECON_DEFAULT_LEN: usize = 7;

fn recon_verify(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let default = if params.slow {
        RECON_DEFAULT_LEN + 1
    } else {
        RECON_DEFAULT_LEN
    };
    let hi = if params.slow { 9 } else { RECON_DEFAULT_LEN };
    let max = params.max_len(default, 5, hi)?;
    let mut rows = Vec::new();
    for n in 5..=max {
        let r = verify_reconstruction(n);
        b.check(
            &format!("length {n}"),
            r.passed(),
            format!(
                "{} permutations, {} colliding groups",
                r.checked,
                r.failures.len()
            ),
        );
        rows.push(json!({ "length": n, "checked": r.checked, "failures": r.failures }));
    }
    Ok(Value::Array(rows))
}

fn taper(b: &mut Builder) -> Result<Value> {
    let mut rows = Vec::new();
    for (n, m) in [(4, 2), (5, 3), (6, 4)] {
        let r = verify_taper(n, m)?;
        b.check(
            &format!("n={n} m={m} holds"),
            r.passed(),
            format!("{} permutations checked", r.checked),
        );
        rows.push(json!({ "n": n, "m": m, "checked": r.checked, "failures": r.failures }));
    }
    let r = verify_taper(11, 5)?;
    let mut witness = taper_counterexample();
    witness.sort();
    b.check(
        "n=11 m=5 fails",
        !r.passed(),
        format!("{} minimal failing sets", r.failures.len()),
    );
    b.check(
        "n=11 m=5 witness",
        r.failures.first() == Some(&witness),
        format!(
            "first failing set {}",
            r.failures.first().map(|f| join(f)).unwrap_or_default()
        ),
    );
    b.check(
        "n=11 m=5 shape",
        r.failures.iter().all(|f| {
            f.len() == 5
                && f.iter()
                    .flat_map(|p| p.children(true).expect("nonempty"))
                    .collect::<BTreeSet<_>>()
                    .len()
                    == 4
        }),
        "every failing set has five permutations with four children between them",
    );
    rows.push(json!({ "n": 11, "m": 5, "checked": r.checked, "failures": r.failures }));
    Ok(Value::Array(rows))
}

fn join(ps: &[Permutation]) -> String {
    ps.iter()
        .map(|p| format!("[{p}]"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Number of classes whose full sequence the search computes.
pub const SEARCH_1123_ENCODED: usize = 178;
/// Number of classes starting `1,1,2,3,4,4` with basis length at most 6.
pub const SEARCH_112344_CLASSES: usize = 173;

fn search_1123_report(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let max_len = params.max_len(10, 6, CENSUS_BOUND)?;
    let r = search_1123(max_len)?;
    let encoded: Vec<&SearchNode> = r.encoded().collect();
    let counter: Vec<&SearchNode> = r
        .nodes
        .iter()
        .filter(|n| n.outcome == SearchOutcome::Counterexample)
        .collect();
    let max = encoded
        .iter()
        .filter_map(|n| n.sequence.as_ref())
        .map(SumSequence::max_entry)
        .max()
        .unwrap_or(0);
    b.check(
        "initial classes",
        r.initial_classes == 30,
        format!("{} initial classes", r.initial_classes),
    );
    b.check(
        "classes encoded",
        encoded.len() == SEARCH_1123_ENCODED,
        format!("{} classes encoded", encoded.len()),
    );
    b.check(
        "no entry above 5 before a 5",
        counter.is_empty(),
        format!("{} counterexamples", counter.len()),
    );
    b.check(
        "encoded sequences at most 5",
        max <= 5,
        format!("largest entry {max}"),
    );
    Ok(json!({
        "initial_classes": r.initial_classes,
        "classes_visited": encoded.len(),
        "branched": r.nodes.len() - encoded.len() - counter.len(),
        "nodes": r.nodes,
    }))
}

/// The class `⊕Sub(U°)` and the basis computed for it from its membership
/// oracle.
pub fn sub_u_basis(bound: usize) -> Result<BTreeSet<Permutation>> {
    compute_basis(in_sum_sub_u, bound)
}

fn search_112344_report(b: &mut Builder) -> Result<Value> {
    let r = search_112344()?;
    let five = r.with_five();
    let expected = [
        ClassSpec::av(&["321", "3412", "4123", "23451", "314625"])?,
        ClassSpec::av(&["321", "2341", "3412", "51234", "251364"])?,
    ];
    let seq: SumSequence = "1,1,2,3,4,4,(5,4)".parse()?;
    b.check(
        "classes",
        r.classes.len() == SEARCH_112344_CLASSES,
        format!("{} classes", r.classes.len()),
    );
    let found: BTreeSet<&[Permutation]> = five.iter().map(|c| c.basis.basis()).collect();
    let want: BTreeSet<&[Permutation]> = expected.iter().map(ClassSpec::basis).collect();
    let listed = five
        .iter()
        .map(|c| c.basis.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    b.check("classes reaching 5", found == want, listed);
    b.check(
        "their sequence",
        five.iter().all(|c| c.sequence == seq),
        format!("expected {seq}"),
    );
    b.check(
        "inverse pair",
        expected[0].inverse().basis() == expected[1].basis(),
        "the two bases are inverse to each other",
    );
    let sub_u = sub_u_basis(7)?;
    b.check(
        "sum closure of Sub(U°)",
        sub_u.iter().eq(expected[0].basis().iter()),
        format!("basis {}", join(&sub_u.iter().cloned().collect::<Vec<_>>())),
    );
    Ok(json!({
        "classes": r.classes,
        "reaching_five": five,
        "sub_u_basis": sub_u,
    }))
}

fn table_report(b: &mut Builder, t: u8, rows: &[sequences::TableRow]) -> Value {
    let mismatched: Vec<String> = rows
        .iter()
        .filter(|r| !r.polynomial_matches())
        .map(|r| r.sequence.to_string())
        .collect();
    b.check(
        "polynomials",
        mismatched.is_empty(),
        format!("{} rows, mismatches: {}", rows.len(), mismatched.join("; ")),
    );
    let misplaced: Vec<String> = rows
        .iter()
        .filter(|r| (r.position == Position::BelowXi) != (t >= 3))
        .map(|r| r.sequence.to_string())
        .collect();
    let side = if t >= 3 { "below xi" } else { "at least xi" };
    b.check(
        "growth rates",
        misplaced.is_empty(),
        format!(
            "every growth rate {side}; exceptions: {}",
            misplaced.join("; ")
        ),
    );
    if t >= 3 {
        let unrealizable: Vec<String> = rows
            .iter()
            .filter(|r| !matches!(classify(&r.sequence).realizable, Realizability::Yes { .. }))
            .map(|r| r.sequence.to_string())
            .collect();
        b.check(
            "realizable",
            unrealizable.is_empty(),
            format!("exceptions: {}", unrealizable.join("; ")),
        );
    }
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "family": r.family,
                    "params": r.params.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<String, usize>>(),
                    "sequence": r.sequence,
                    "polynomial": r.polynomial.descending(),
                    "growth": r.growth.decimal(8),
                    "position": r.position,
                })
            })
            .collect(),
    )
}

/// The printed basis for a finitely based class at `ξ`.
pub const XI_CLASS_BASIS: [&str; 7] = [
    "231",
    "4132",
    "4213",
    "54312",
    "7612345",
    "81234567",
    "987654321",
];

fn xi_basis(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let max_len = params.max_len(CENSUS_BOUND, 9, CENSUS_BOUND)?;
    let digits = params.digits()?;
    let target = SumSequence::finite(vec![1, 1, 2, 4, 3, 3, 2, 1]);
    let expected: Vec<u64> = target.terms(max_len).iter().map(|&v| v as u64).collect();
    let mut classes = Vec::new();
    let witness = sequences::realize(&target)?
        .basis
        .ok_or_else(|| Error::NotRealizable(target.to_string()))?;
    for (label, spec) in [
        ("printed class", ClassSpec::av(&XI_CLASS_BASIS)?),
        ("chain witness", witness),
    ] {
        let c = census(&spec, max_len)?;
        let si = c.si_sequence();
        b.check(
            &format!("{label} sequence"),
            si == expected,
            format!("{spec}: {si:?}"),
        );
        let seq = SumSequence::finite(si.iter().map(|&v| v as u32).collect());
        let poly = sequences::growth_polynomial_of_sequence(&seq)?;
        let growth = sequences::growth_rate_of_sequence(&seq)?;
        b.check(
            &format!("{label} growth polynomial"),
            poly == xi_polynomial(),
            poly.descending(),
        );
        b.check(
            &format!("{label} growth rate"),
            growth.compare(&xi()).is_eq(),
            growth.decimal(digits),
        );
        classes.push(json!({
            "label": label,
            "basis": spec,
            "sum_indecomposable": si,
            "members": c.members,
            "polynomial": poly.descending(),
            "growth": growth.decimal(digits),
        }));
    }
    Ok(json!({ "expected": target, "classes": classes }))
}

fn accumulation(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let f = &xi_polynomial() * &IntPoly::from_i64s(&[1, 1]);
    let g = IntPoly::from_i64s(&[-1]);
    let eps = params.eps()?;
    let roots = family_roots(&f, &g, |i| 2 * i + 1, 1..=10, eps);
    b.check(
        "strictly decreasing above xi",
        roots.is_ok(),
        roots
            .as_ref()
            .err()
            .map(|e| e.to_string())
            .unwrap_or_default(),
    );
    let roots = roots.unwrap_or_default();
    if let Some(last) = roots.last() {
        let gap = last.to_f64() - xi().to_f64();
        b.check(
            "last root within 1e-3 of xi",
            gap < 1e-3,
            format!("gap {gap:.3e}"),
        );
    }
    let digits = params.digits()?;
    Ok(json!({
        "family": "x^(2i+1) (x+1)(x^5 - 2x^4 - x^2 - x - 1) - 1",
        "roots": roots.iter().enumerate().map(|(k, r)| json!({ "i": k + 1, "root": r.decimal(digits) })).collect::<Vec<_>>(),
        "xi": xi().decimal(digits),
    }))
}

fn growth_report(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let digits = params.digits()?;
    let eps = params.eps()?;
    if let Some(seq) = &params.seq {
        if seq.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero sequence has no growth rate".into(),
            ));
        }
        let poly = sequences::growth_polynomial_of_sequence(seq)?;
        let growth = sequences::growth_rate_of_sequence(seq)?.refined(eps);
        b.check("computed", true, growth.decimal(digits));
        return Ok(json!({
            "sequence": seq,
            "sum_indecomposable_gf": sequences::gf_of_sequence(seq).to_string(),
            "polynomial": poly.descending(),
            "growth": growth.decimal(digits),
            "position": Position::of(&growth),
        }));
    }
    let spec = params.require_basis()?;
    let automaton = build_automaton(spec)?;
    let f = gf_from_automaton(&automaton)?;
    let growth = growth_rate(&f, eps)?;
    let check = census(spec, 8.min(CENSUS_BOUND))?;
    let series: Vec<u64> = f.coefficients_i64(8)?.iter().map(|&v| v as u64).collect();
    b.check(
        "generating function matches census",
        series == check.members,
        format!("{series:?}"),
    );
    Ok(json!({
        "basis": spec,
        "states": automaton.num_states(),
        "gf": f.to_string(),
        "polynomial": crate::algebraic::growth_polynomial(&f)?.descending(),
        "growth": growth.decimal(digits),
        "position": Position::of(&growth),
    }))
}

fn classify_report(b: &mut Builder, params: &CampaignParams) -> Result<Value> {
    let seq = params.require_seq()?;
    let verdict = classify(seq);
    let mut realization = Value::Null;
    if matches!(verdict.realizable, Realizability::Yes { .. }) {
        let r = sequences::realize(seq)?;
        let max_len = params.max_len(10, 1, CENSUS_BOUND)?;
        let got: Vec<u64> = r.census(max_len)?.si_sequence();
        let want: Vec<u64> = seq.terms(max_len).iter().map(|&v| v as u64).collect();
        b.check("witness census", got == want, format!("{got:?}"));
        if let Some(basis) = &r.basis {
            let by_basis = census(basis, max_len)?.si_sequence();
            b.check(
                "witness basis census",
                by_basis == want,
                format!("{by_basis:?}"),
            );
        }
        realization = json!({ "construction": r.construction, "basis": r.basis });
    }
    Ok(json!({ "verdict": verdict, "realization": realization }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_classes() {
        let classes = initial_1123_classes().unwrap();
        assert_eq!(classes.len(), 30);
        for c in &classes {
            assert_eq!(census(c, 4).unwrap().si_sequence(), vec![1, 1, 2, 3]);
        }
    }

    #[test]
    fn names_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.name().parse::<Campaign>().unwrap(), c);
            assert!(!c.anchor().is_empty());
        }
        assert!(matches!(
            "table5".parse::<Campaign>(),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        let p = CampaignParams {
            eps: Some(1.5),
            ..Default::default()
        };
        assert!(p.eps().is_err());
        let p = CampaignParams {
            eps: Some(1e-6),
            max_len: Some(3),
            ..Default::default()
        };
        assert_eq!(p.digits().unwrap(), 6);
        assert!(p.max_len(7, 5, 9).is_err());
        assert_eq!(CampaignParams::default().max_len(7, 5, 9).unwrap(), 7);
        assert!(CampaignParams::default().require_seq().is_err());
        assert!(matches!(
            run_campaign(Campaign::Census, &CampaignParams::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let p = CampaignParams::default();
        let a = run_campaign(Campaign::Table1, &p).unwrap();
        let b = run_campaign(Campaign::Table1, &p).unwrap();
        assert!(a.passed());
        assert_eq!(a.to_json(), b.to_json());
        assert!(a
            .to_csv()
            .starts_with("sequence,polynomial,growth,position"));
    }
}
