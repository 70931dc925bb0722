use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::{CanonicalStream, Universe};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::solve::{
    list_colorable, mn_chromatic_number, zero_free_chromatic_number, ListAssignment, ListMode,
};

/// Largest absolute value allowed in enumerated lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseCap(pub u32);

impl UniverseCap {
    /// The cap that makes a search over `n` lists of size `t` exact.
    pub fn exact_for(n: usize, t: usize) -> UniverseCap {
        UniverseCap((n * t) as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChooseStatus {
    Refuted,
    Sampled,
    VerifiedWithinCap,
    VerifiedExact,
}

impl ChooseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ChooseStatus::Refuted => "refuted",
            ChooseStatus::Sampled => "sampled",
            ChooseStatus::VerifiedWithinCap => "verified-within-cap",
            ChooseStatus::VerifiedExact => "verified-exact",
        }
    }
}

impl fmt::Display for ChooseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a choosability check at list size `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChooseVerdict {
    pub value: usize,
    pub status: ChooseStatus,
    pub certificate: Option<ListAssignment>,
    pub systems_checked: u64,
    pub cap: u32,
    pub budget: u64,
    pub seed: Option<u64>,
}

impl ChooseVerdict {
    pub fn is_refuted(&self) -> bool {
        self.status == ChooseStatus::Refuted
    }
}

/// Search limits for [`is_t_choosable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub cap: UniverseCap,
    /// Canonical systems to enumerate; when the stream is longer, the same
    /// number of seeded random systems is checked afterwards.
    pub budget: u64,
    pub seed: Option<u64>,
}

const CHUNK: usize = 2048;

/// Index of the first system in `chunk` that is not list-colorable.
fn first_bad(g: &SignedGraph, u: Universe, chunk: &[Vec<u128>]) -> Option<usize> {
    chunk
        .par_iter()
        .position_first(|s| {
            let lists = u.to_assignment(s);
            !list_colorable(g, &lists)
                .expect("lists are total")
                .is_colorable()
        })
}

fn certify(g: &SignedGraph, t: usize, lists: ListAssignment) -> ListAssignment {
    let again = list_colorable(g, &lists).expect("lists are total");
    assert!(
        !again.is_colorable() && lists.lists().iter().all(|l| l.len() >= t),
        "certificate failed re-verification"
    );
    lists
}

/// Checks whether `g` is L-colorable for every system of zero-free lists
/// of size `t` drawn from `{±1..±cap}`.
pub fn is_t_choosable(g: &SignedGraph, t: usize, limits: SearchLimits) -> Result<ChooseVerdict> {
    is_t_choosable_in(g, t, ListMode::ZeroFree, limits)
}

/// As [`is_t_choosable`], with lists that may contain 0 in general mode.
///
/// Lists are fixed to exactly `t` colors. Systems are enumerated one per
/// orbit under signed relabeling; the first bad system in stream order is
/// returned as the certificate. An exhausted stream is exact when
/// `cap >= n·t`: a bad system uses at most `n·t` absolute values and can be
/// relabeled into the window.
pub fn is_t_choosable_in(
    g: &SignedGraph,
    t: usize,
    mode: ListMode,
    limits: SearchLimits,
) -> Result<ChooseVerdict> {
    let n = g.vertex_count();
    let u = Universe::new(limits.cap.0, mode)?;
    if t == 0 || t > u.size() {
        return Err(Error::CapTooSmall {
            cap: limits.cap.0,
            t,
        });
    }
    let mut verdict = ChooseVerdict {
        value: t,
        status: ChooseStatus::Sampled,
        certificate: None,
        systems_checked: 0,
        cap: limits.cap.0,
        budget: limits.budget,
        seed: None,
    };
    let mut stream = CanonicalStream::new(n, t, u)?;
    let mut exhausted = false;
    while !exhausted {
        let room = (limits.budget - verdict.systems_checked).min(CHUNK as u64) as usize;
        if room == 0 {
            break;
        }
        let chunk: Vec<Vec<u128>> = stream.by_ref().take(room).collect();
        exhausted = chunk.len() < room;
        if let Some(i) = first_bad(g, u, &chunk) {
            verdict.systems_checked += i as u64 + 1;
            verdict.status = ChooseStatus::Refuted;
            verdict.certificate = Some(certify(g, t, u.to_assignment(&chunk[i])));
            return Ok(verdict);
        }
        verdict.systems_checked += chunk.len() as u64;
    }
    if !exhausted {
        // budget ran out with a nonempty remainder, unless it ended exactly
        exhausted = stream.next().is_none();
    }
    if exhausted {
        verdict.status = if limits.cap.0 as usize >= n * t {
            ChooseStatus::VerifiedExact
        } else {
            ChooseStatus::VerifiedWithinCap
        };
        return Ok(verdict);
    }
    let seed = limits.seed.unwrap_or(0);
    let sampled = sample_systems(g, t, u, limits.budget, seed);
    verdict.seed = Some(seed);
    verdict.systems_checked += sampled.checked;
    if let Some(cert) = sampled.certificate {
        verdict.status = ChooseStatus::Refuted;
        verdict.certificate = Some(cert);
    }
    Ok(verdict)
}

struct Sampled {
    checked: u64,
    certificate: Option<ListAssignment>,
}

fn sample_systems(g: &SignedGraph, t: usize, u: Universe, count: u64, seed: u64) -> Sampled {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    while checked < count {
        let room = (count - checked).min(CHUNK as u64) as usize;
        let chunk: Vec<Vec<u128>> = (0..room)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        sample(&mut rng, u.size(), t)
                            .iter()
                            .fold(0u128, |m, k| m | 1 << k)
                    })
                    .collect()
            })
            .collect();
        if let Some(i) = first_bad(g, u, &chunk) {
            return Sampled {
                checked: checked + i as u64 + 1,
                certificate: Some(certify(g, t, u.to_assignment(&chunk[i]))),
            };
        }
        checked += room as u64;
    }
    Sampled {
        checked,
        certificate: None,
    }
}

/// Checks `count` uniformly random systems of `t`-lists from the window.
/// The verdict is `sampled` unless a bad system turns up.
pub fn sample_t_choosable(
    g: &SignedGraph,
    t: usize,
    mode: ListMode,
    cap: UniverseCap,
    count: u64,
    seed: u64,
) -> Result<ChooseVerdict> {
    let u = Universe::new(cap.0, mode)?;
    if t == 0 || t > u.size() {
        return Err(Error::CapTooSmall { cap: cap.0, t });
    }
    let s = sample_systems(g, t, u, count, seed);
    Ok(ChooseVerdict {
        value: t,
        status: if s.certificate.is_some() {
            ChooseStatus::Refuted
        } else {
            ChooseStatus::Sampled
        },
        certificate: s.certificate,
        systems_checked: s.checked,
        cap: cap.0,
        budget: count,
        seed: Some(seed),
    })
}

/// How the universe cap is chosen for each candidate list size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapPolicy {
    /// `n·t`, which makes every completed search exact.
    Exact,
    Fixed(UniverseCap),
}

impl CapPolicy {
    fn resolve(self, n: usize, t: usize) -> UniverseCap {
        match self {
            CapPolicy::Exact => UniverseCap::exact_for(n, t),
            CapPolicy::Fixed(c) => c,
        }
    }
}

/// Smallest even `2k` at which no bad zero-free list system is found.
///
/// Sizes below the zero-free chromatic number are skipped: the palette
/// itself is a bad system there. The returned verdict carries the status
/// at the returned value.
pub fn zero_free_list_chromatic_number(
    g: &SignedGraph,
    cap: CapPolicy,
    budget: u64,
    seed: Option<u64>,
) -> Result<ChooseVerdict> {
    let n = g.vertex_count();
    let mut t = zero_free_chromatic_number(g) as usize;
    loop {
        let limits = SearchLimits {
            cap: cap.resolve(n, t),
            budget,
            seed,
        };
        let v = is_t_choosable(g, t, limits)?;
        if !v.is_refuted() {
            return Ok(v);
        }
        t += 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChromaticMode {
    ZeroFree,
    Mn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticChoosability {
    pub mode: ChromaticMode,
    pub chromatic_number: u32,
    pub verdict: ChooseVerdict,
}

impl ChromaticChoosability {
    /// `Some(false)` on a refutation, `Some(true)` on exact verification.
    pub fn is_chromatic_choosable(&self) -> Option<bool> {
        match self.verdict.status {
            ChooseStatus::Refuted => Some(false),
            ChooseStatus::VerifiedExact => Some(true),
            _ => None,
        }
    }
}

/// Computes the chromatic number in `mode` and tests choosability at it.
pub fn is_chromatic_choosable(
    g: &SignedGraph,
    mode: ChromaticMode,
    cap: CapPolicy,
    budget: u64,
    seed: Option<u64>,
) -> Result<ChromaticChoosability> {
    let (chi, list_mode) = match mode {
        ChromaticMode::ZeroFree => (zero_free_chromatic_number(g), ListMode::ZeroFree),
        ChromaticMode::Mn => (mn_chromatic_number(g), ListMode::General),
    };
    let t = chi as usize;
    let limits = SearchLimits {
        cap: cap.resolve(g.vertex_count(), t),
        budget,
        seed,
    };
    let verdict = is_t_choosable_in(g, t, list_mode, limits)?;
    Ok(ChromaticChoosability {
        mode,
        chromatic_number: chi,
        verdict,
    })
}
