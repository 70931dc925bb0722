//! Verification campaigns over families of instances, with JSON-lines
//! reports.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sgc_core::choose::{
    is_t_choosable_in, sample_t_choosable, ChooseStatus, ChooseVerdict, SearchLimits,
    UniverseCap,
};
use sgc_core::format::{serialize_graph_json, ListsDoc};
use sgc_core::reduce::multipartite_expansion;
use sgc_core::solve::{list_colorable, mn_chromatic_number};
use sgc_core::{Error, ListAssignment, ListMode, PairKind, Result, SignedGraph};

/// Source of choosability verdicts. Campaigns recheck every certificate a
/// checker returns, so a faulty checker surfaces as an inconsistency.
pub trait Checker: Sync {
    fn check(
        &self,
        g: &SignedGraph,
        t: usize,
        mode: ListMode,
        limits: SearchLimits,
    ) -> Result<ChooseVerdict>;

    fn sample(
        &self,
        g: &SignedGraph,
        t: usize,
        mode: ListMode,
        cap: UniverseCap,
        count: u64,
        seed: u64,
    ) -> Result<ChooseVerdict>;
}

/// The exact engine from the core crate.
pub struct Engine;

impl Checker for Engine {
    fn check(
        &self,
        g: &SignedGraph,
        t: usize,
        mode: ListMode,
        limits: SearchLimits,
    ) -> Result<ChooseVerdict> {
        is_t_choosable_in(g, t, mode, limits)
    }

    fn sample(
        &self,
        g: &SignedGraph,
        t: usize,
        mode: ListMode,
        cap: UniverseCap,
        count: u64,
        seed: u64,
    ) -> Result<ChooseVerdict> {
        sample_t_choosable(g, t, mode, cap, count, seed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub value: usize,
    pub status: ChooseStatus,
    pub certificate: Option<ListsDoc>,
    pub systems_checked: u64,
    pub cap: u32,
    pub budget: u64,
    pub seed: Option<u64>,
}

impl From<&ChooseVerdict> for VerdictRecord {
    fn from(v: &ChooseVerdict) -> Self {
        VerdictRecord {
            value: v.value,
            status: v.status,
            certificate: v.certificate.as_ref().map(ListsDoc::from_assignment),
            systems_checked: v.systems_checked,
            cap: v.cap,
            budget: v.budget,
            seed: v.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub descriptor: Value,
    /// `false` for instances outside the hypothesis being tested.
    pub in_scope: bool,
    pub verdict: Option<VerdictRecord>,
    /// Random systems checked beyond the enumerated window.
    pub sampled: Option<VerdictRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub k: Option<usize>,
    pub max_n: Option<usize>,
    pub cap: u32,
    pub budget: u64,
    pub samples: u64,
    pub seed: u64,
    pub iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub out_of_scope: usize,
    pub statuses: BTreeMap<ChooseStatus, usize>,
    pub systems_checked: u64,
    pub sampled_systems: u64,
}

/// A certificate that passed every recheck.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub descriptor: Value,
    pub certificate: ListsDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub parameters: Parameters,
    pub instances: Vec<InstanceRecord>,
    pub summary: Summary,
    pub violations: Vec<Violation>,
    /// Certificates that failed a recheck.
    pub inconsistencies: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum Line {
    Instance(InstanceRecord),
    Summary {
        campaign: String,
        parameters: Parameters,
        summary: Summary,
        violations: Vec<Violation>,
        inconsistencies: Vec<String>,
    },
}

impl CampaignReport {
    /// One line per instance followed by a summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.instances {
            out.push_str(&serde_json::to_string(&Line::Instance(r.clone())).unwrap());
            out.push('\n');
        }
        let summary = Line::Summary {
            campaign: self.campaign.clone(),
            parameters: self.parameters.clone(),
            summary: self.summary.clone(),
            violations: self.violations.clone(),
            inconsistencies: self.inconsistencies.clone(),
        };
        out.push_str(&serde_json::to_string(&summary).unwrap());
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> std::result::Result<CampaignReport, String> {
        let mut instances = Vec::new();
        let mut tail = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            if tail.is_some() {
                return Err(format!("line {}: content after the summary", i + 1));
            }
            match serde_json::from_str(line).map_err(|e| format!("line {}: {e}", i + 1))? {
                Line::Instance(r) => instances.push(r),
                Line::Summary {
                    campaign,
                    parameters,
                    summary,
                    violations,
                    inconsistencies,
                } => tail = Some((campaign, parameters, summary, violations, inconsistencies)),
            }
        }
        let (campaign, parameters, summary, violations, inconsistencies) =
            tail.ok_or("missing summary line")?;
        if summary.instances != instances.len() {
            return Err(format!(
                "summary counts {} instances, found {}",
                summary.instances,
                instances.len()
            ));
        }
        Ok(CampaignReport {
            campaign,
            parameters,
            instances,
            summary,
            violations,
            inconsistencies,
        })
    }

    /// 3 when a violation or an inconsistent certificate was found.
    pub fn verify_exit_code(&self) -> i32 {
        if self.violations.is_empty() && self.inconsistencies.is_empty() {
            0
        } else {
            3
        }
    }
}

fn summarize(instances: &[InstanceRecord]) -> Summary {
    let mut statuses = BTreeMap::new();
    let mut systems_checked = 0;
    let mut sampled_systems = 0;
    for r in instances {
        if let Some(v) = &r.verdict {
            *statuses.entry(v.status).or_insert(0) += 1;
            systems_checked += v.systems_checked;
        }
        if let Some(s) = &r.sampled {
            sampled_systems += s.systems_checked;
        }
    }
    Summary {
        instances: instances.len(),
        out_of_scope: instances.iter().filter(|r| !r.in_scope).count(),
        statuses,
        systems_checked,
        sampled_systems,
    }
}

/// Exhaustive check over every assignment from the lists, independent of
/// the backtracking solver.
pub fn brute_force_colorable(g: &SignedGraph, lists: &ListAssignment) -> bool {
    let n = g.vertex_count();
    if lists.len() != n || lists.lists().iter().any(|l| l.is_empty()) {
        return false;
    }
    let mut idx = vec![0usize; n];
    loop {
        let f: Vec<i32> = (0..n).map(|v| lists.list(v)[idx[v]]).collect();
        if g.edges().iter().all(|e| f[e.u] != e.sign.value() * f[e.v]) {
            return true;
        }
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            idx[v] += 1;
            if idx[v] < lists.list(v).len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Rechecks a certificate with the solver and by brute force.
fn recheck(g: &SignedGraph, t: usize, mode: ListMode, cert: &ListAssignment) -> Option<String> {
    if cert.mode() != mode || cert.len() != g.vertex_count() {
        return Some("certificate has the wrong mode or length".into());
    }
    if cert.lists().iter().any(|l| l.len() != t) {
        return Some(format!("certificate lists are not of size {t}"));
    }
    match list_colorable(g, cert) {
        Ok(r) if r.is_colorable() => return Some("solver colors the certificate".into()),
        Err(e) => return Some(e.to_string()),
        Ok(_) => {}
    }
    if brute_force_colorable(g, cert) {
        return Some("brute force colors the certificate".into());
    }
    None
}

struct Checked {
    record: InstanceRecord,
    violations: Vec<Violation>,
    inconsistencies: Vec<String>,
}

impl Checked {
    fn new(descriptor: Value, in_scope: bool) -> Checked {
        Checked {
            record: InstanceRecord {
                descriptor,
                in_scope,
                verdict: None,
                sampled: None,
            },
            violations: vec![],
            inconsistencies: vec![],
        }
    }

    /// Records a refutation as a violation if every recheck confirms it.
    fn absorb(&mut self, g: &SignedGraph, mode: ListMode, v: &ChooseVerdict) {
        if !v.is_refuted() {
            return;
        }
        let Some(cert) = &v.certificate else {
            self.inconsistencies
                .push(format!("{}: refuted without a certificate", self.record.descriptor));
            return;
        };
        match recheck(g, v.value, mode, cert) {
            None => self.violations.push(Violation {
                descriptor: self.record.descriptor.clone(),
                certificate: ListsDoc::from_assignment(cert),
            }),
            Some(why) => self
                .inconsistencies
                .push(format!("{}: {why}", self.record.descriptor)),
        }
    }
}

fn assemble(campaign: &str, parameters: Parameters, checked: Vec<Checked>) -> CampaignReport {
    let mut instances = Vec::new();
    let mut violations = Vec::new();
    let mut inconsistencies = Vec::new();
    for c in checked {
        instances.push(c.record);
        violations.extend(c.violations);
        inconsistencies.extend(c.inconsistencies);
    }
    CampaignReport {
        campaign: campaign.into(),
        summary: summarize(&instances),
        parameters,
        instances,
        violations,
        inconsistencies,
    }
}

/// Part-size profiles with exactly `k` parts and at most `2k + 1`
/// vertices, nondecreasing, by total then lexicographically.
pub fn part_profiles(k: usize) -> Vec<Vec<usize>> {
    fn fill(k: usize, total: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let left = k - prefix.len();
        for s in min..=total {
            if s * left > total {
                break;
            }
            prefix.push(s);
            fill(k, total - s, s, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in k..=2 * k + 1 {
        fill(k, n, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Checks that every complete multipartite expansion with `k` parts on at
/// most `2k + 1` vertices admits a coloring from any zero-free lists of
/// size `2k`. Profiles left short of exact get `samples` extra random
/// systems with absolute values up to `cap + 1`.
pub fn verify_theorem(
    k: usize,
    cap: u32,
    budget: u64,
    samples: u64,
    seed: u64,
    checker: &dyn Checker,
) -> Result<CampaignReport> {
    if k == 0 {
        return Err(Error::EmptyPart);
    }
    let t = 2 * k;
    if 2 * (cap as usize) < t {
        return Err(Error::CapTooSmall { cap, t });
    }
    let checked = part_profiles(k)
        .par_iter()
        .map(|sizes| -> Result<Checked> {
            let pe = multipartite_expansion(sizes)?;
            let g = pe.graph();
            let descriptor = serde_json::json!({ "parts": sizes, "n": pe.vertex_count() });
            let mut c = Checked::new(descriptor, true);
            let limits = SearchLimits {
                cap: UniverseCap(cap),
                budget,
                seed: Some(seed),
            };
            let v = checker.check(g, t, ListMode::ZeroFree, limits)?;
            c.absorb(g, ListMode::ZeroFree, &v);
            if !v.is_refuted() && v.status != ChooseStatus::VerifiedExact && samples > 0 {
                let wider = UniverseCap((cap + 1).min(sgc_core::choose::canonical::MAX_CAP));
                let s = checker.sample(g, t, ListMode::ZeroFree, wider, samples, seed)?;
                c.absorb(g, ListMode::ZeroFree, &s);
                c.record.sampled = Some(VerdictRecord::from(&s));
            }
            c.record.verdict = Some(VerdictRecord::from(&v));
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let parameters = Parameters {
        k: Some(k),
        max_n: None,
        cap,
        budget,
        samples,
        seed,
        iso: false,
    };
    Ok(assemble("verify-theorem", parameters, checked))
}

fn pair_code(kind: PairKind) -> u8 {
    match kind {
        PairKind::None => 0,
        PairKind::PositiveOnly | PairKind::NegativeOnly => 1,
        PairKind::Double => 2,
    }
}

/// Which pairs are joined, and by one or two edges.
fn underlying(g: &SignedGraph) -> Vec<u8> {
    let n = g.vertex_count();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| pair_code(g.kind(u, v)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One signed graph per switching class on `n` vertices, per underlying
/// multigraph, or per isomorphism type of it when `iso` is set.
pub fn switching_representatives(n: usize, iso: bool) -> Vec<SignedGraph> {
    const KINDS: [PairKind; 4] = [
        PairKind::None,
        PairKind::PositiveOnly,
        PairKind::NegativeOnly,
        PairKind::Double,
    ];
    let pairs = n * (n.saturating_sub(1)) / 2;
    let perms = if iso { permutations(n) } else { vec![(0..n).collect()] };
    let mut buckets: BTreeMap<Vec<u8>, Vec<SignedGraph>> = BTreeMap::new();
    let mut order = Vec::new();
    for code in 0..4u64.pow(pairs as u32) {
        let mut digits = (0..pairs).map(|i| (code >> (2 * i)) as usize & 3);
        let mut table = vec![PairKind::None; n * n];
        for u in 0..n {
            for v in u + 1..n {
                table[u * n + v] = KINDS[digits.next().unwrap()];
            }
        }
        let g = SignedGraph::from_kinds(n, |u, v| table[u * n + v]);
        let key = perms
            .iter()
            .map(|p| underlying(&g.induced(p)))
            .min()
            .unwrap();
        let reps = buckets.entry(key).or_default();
        let seen = reps.iter().any(|r| {
            perms
                .iter()
                .any(|p| matches!(g.induced(p).switching_equivalent(r), Ok(Some(_))))
        });
        if !seen {
            reps.push(g.clone());
            order.push(g);
        }
    }
    order
}

/// Tests chromatic-choosability in the `M_n` sense for every signed graph
/// on at most `max_n` vertices with `n <= chi + 1`, one per switching
/// class. Graphs with `n > chi + 1` are recorded as out of scope.
pub fn conjecture_search(
    max_n: usize,
    cap: u32,
    budget: u64,
    seed: u64,
    iso: bool,
    checker: &dyn Checker,
) -> Result<CampaignReport> {
    if max_n == 0 {
        return Err(Error::EmptyGraph);
    }
    let graphs: Vec<SignedGraph> = (1..=max_n)
        .flat_map(|n| switching_representatives(n, iso))
        .collect();
    let checked = graphs
        .par_iter()
        .map(|g| -> Result<Checked> {
            let n = g.vertex_count();
            let chi = mn_chromatic_number(g) as usize;
            let graph: Value = serde_json::from_str(&serialize_graph_json(g)).unwrap();
            let descriptor = serde_json::json!({ "n": n, "chi": chi, "graph": graph });
            let in_scope = n <= chi + 1;
            let mut c = Checked::new(descriptor, in_scope);
            if in_scope {
                let limits = SearchLimits {
                    cap: UniverseCap(cap),
                    budget,
                    seed: Some(seed),
                };
                let v = checker.check(g, chi, ListMode::General, limits)?;
                c.absorb(g, ListMode::General, &v);
                c.record.verdict = Some(VerdictRecord::from(&v));
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let parameters = Parameters {
        k: None,
        max_n: Some(max_n),
        cap,
        budget,
        samples: 0,
        seed,
        iso,
    };
    Ok(assemble("conjecture-search", parameters, checked))
}
