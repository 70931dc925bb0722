//! Orderly generation of list systems up to signed relabeling of colors.
//!
//! The symmetry group acts on the colors `{±1..±m}` (and fixes 0 in general
//! mode) by the maps `φ` with `φ(-c) = -φ(c)`: a permutation of absolute
//! values combined with a sign flip per absolute value. Each list is
//! encoded as a bit mask over color keys `1, -1, 2, -2, .., m, -m, 0`, and
//! lists of equal size compare lexicographically as sorted key vectors. A
//! list system is canonical when no group element maps it to a
//! lexicographically smaller tuple of lists.
//!
//! Minimal images are computed list by list. Colors already relabeled by
//! earlier lists are fixed; absolute values seen for the first time take
//! the next unused targets, those present with both signs first. Every
//! relabeling that ties for the minimum is carried forward.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::solve::{Color, ListAssignment, ListMode};

/// Largest supported absolute value.
pub const MAX_CAP: u32 = 63;

/// Finite color window `{±1..±m}`, plus 0 in general mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Universe {
    m: u32,
    zero: bool,
}

impl Universe {
    pub fn new(m: u32, mode: ListMode) -> Result<Universe> {
        if m == 0 {
            return Err(Error::CapTooSmall { cap: 0, t: 1 });
        }
        if m > MAX_CAP {
            return Err(Error::CapTooLarge(m));
        }
        Ok(Universe {
            m,
            zero: mode == ListMode::General,
        })
    }

    pub fn cap(self) -> u32 {
        self.m
    }

    pub fn mode(self) -> ListMode {
        if self.zero {
            ListMode::General
        } else {
            ListMode::ZeroFree
        }
    }

    /// Number of colors in the window.
    pub fn size(self) -> usize {
        2 * self.m as usize + usize::from(self.zero)
    }

    fn zero_key(self) -> u32 {
        2 * self.m
    }

    pub fn key(self, c: Color) -> Option<u32> {
        if c == 0 {
            return self.zero.then_some(self.zero_key());
        }
        let a = c.unsigned_abs();
        (a <= self.m).then(|| 2 * (a - 1) + u32::from(c < 0))
    }

    pub fn color(self, key: u32) -> Color {
        if key == self.zero_key() {
            0
        } else {
            let a = (key / 2 + 1) as Color;
            if key % 2 == 1 {
                -a
            } else {
                a
            }
        }
    }

    pub fn list_mask(self, colors: &[Color]) -> Option<u128> {
        colors
            .iter()
            .try_fold(0u128, |m, &c| self.key(c).map(|k| m | 1 << k))
    }

    pub fn mask_colors(self, mask: u128) -> Vec<Color> {
        bits(mask).map(|k| self.color(k)).collect()
    }

    pub fn to_assignment(self, system: &[u128]) -> ListAssignment {
        ListAssignment::new(
            self.mode(),
            system.iter().map(|&m| self.mask_colors(m)).collect(),
        )
        .expect("window colors respect the mode")
    }

    pub fn from_assignment(self, lists: &ListAssignment) -> Option<Vec<u128>> {
        lists.lists().iter().map(|l| self.list_mask(l)).collect()
    }

    /// All `t`-subsets of the window in increasing list order.
    pub fn subsets(self, t: usize) -> Vec<u128> {
        let u = self.size();
        let mut out = Vec::new();
        if t > u {
            return out;
        }
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            out.push(idx.iter().fold(0u128, |m, &i| m | 1 << i));
            let Some(i) = (0..t).rev().find(|&i| idx[i] < u - t + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros();
            mask &= mask - 1;
            Some(k)
        }
    })
}

/// Order on equal-size lists: the smaller list owns the least key of the
/// symmetric difference.
#[inline]
pub fn cmp_lists(a: u128, b: u128) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    if a >> low & 1 == 1 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub fn cmp_systems(a: &[u128], b: &[u128]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| cmp_lists(*x, *y))
        .find(|o| o.is_ne())
        .unwrap_or(a.len().cmp(&b.len()))
}

const UNMAPPED: u8 = u8::MAX;

/// A partial signed relabeling of absolute values (0-based).
#[derive(Clone, Copy)]
struct Relabel {
    target: [u8; MAX_CAP as usize],
    flip: u64,
    next: u8,
}

impl Relabel {
    fn empty() -> Relabel {
        Relabel {
            target: [UNMAPPED; MAX_CAP as usize],
            flip: 0,
            next: 0,
        }
    }
}

/// First-time absolute values of a list under some relabeling.
struct Fresh {
    fixed_image: u128,
    pairs: Vec<u8>,
    singles: Vec<(u8, bool)>,
}

fn split(u: Universe, r: &Relabel, list: u128) -> Fresh {
    let mut fixed_image = 0u128;
    let mut pos = 0u64;
    let mut neg = 0u64;
    for k in bits(list) {
        if k == u.zero_key() {
            fixed_image |= 1 << k;
            continue;
        }
        let a = (k / 2) as usize;
        let negative = k % 2 == 1;
        let t = r.target[a];
        if t == UNMAPPED {
            if negative {
                neg |= 1 << a;
            } else {
                pos |= 1 << a;
            }
        } else {
            let flipped = negative ^ (r.flip >> a & 1 == 1);
            fixed_image |= 1 << (2 * t as u32 + u32::from(flipped));
        }
    }
    let pairs = bits((pos & neg) as u128).map(|a| a as u8).collect();
    let singles = bits(((pos | neg) & !(pos & neg)) as u128)
        .map(|a| (a as u8, neg >> a & 1 == 1))
        .collect();
    Fresh {
        fixed_image,
        pairs,
        singles,
    }
}

fn fresh_image(next: u8, f: &Fresh) -> u128 {
    let mut image = f.fixed_image;
    let mut t = next as u32;
    for _ in &f.pairs {
        image |= 0b11 << (2 * t);
        t += 1;
    }
    for _ in &f.singles {
        image |= 1 << (2 * t);
        t += 1;
    }
    image
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Every relabeling extending `r` that achieves the minimal image.
fn tied_extensions(r: &Relabel, f: &Fresh, out: &mut Vec<Relabel>) {
    let p = f.pairs.len();
    let single_abs: Vec<u8> = f.singles.iter().map(|s| s.0).collect();
    let single_neg = |a: u8| f.singles.iter().find(|s| s.0 == a).unwrap().1;
    let pair_perms = permutations(&f.pairs);
    let single_perms = permutations(&single_abs);
    for pp in &pair_perms {
        for signs in 0u64..(1 << p) {
            for sp in &single_perms {
                let mut e = *r;
                for (i, &a) in pp.iter().enumerate() {
                    e.target[a as usize] = r.next + i as u8;
                    if signs >> i & 1 == 1 {
                        e.flip |= 1 << a;
                    }
                }
                for (j, &a) in sp.iter().enumerate() {
                    e.target[a as usize] = r.next + (p + j) as u8;
                    if single_neg(a) {
                        e.flip |= 1 << a;
                    }
                }
                e.next = r.next + (p + sp.len()) as u8;
                out.push(e);
            }
        }
    }
}

/// Minimal image of `list` over all relabelings extending one of `states`,
/// with the relabelings achieving it.
fn min_image(u: Universe, states: &[Relabel], list: u128) -> (u128, Vec<Relabel>) {
    let splits: Vec<Fresh> = states.iter().map(|r| split(u, r, list)).collect();
    let images: Vec<u128> = states
        .iter()
        .zip(&splits)
        .map(|(r, f)| fresh_image(r.next, f))
        .collect();
    let best = images
        .iter()
        .copied()
        .min_by(|a, b| cmp_lists(*a, *b))
        .expect("at least one relabeling");
    let mut tied = Vec::new();
    for ((r, f), img) in states.iter().zip(&splits).zip(&images) {
        if *img == best {
            tied_extensions(r, f, &mut tied);
        }
    }
    (best, tied)
}

/// The least member of the orbit of `system`.
pub fn canonical_form(u: Universe, system: &[u128]) -> Vec<u128> {
    let mut states = vec![Relabel::empty()];
    let mut out = Vec::with_capacity(system.len());
    for &list in system {
        let (img, tied) = min_image(u, &states, list);
        out.push(img);
        states = tied;
    }
    out
}

pub fn is_canonical(u: Universe, system: &[u128]) -> bool {
    canonical_form(u, system) == system
}

/// A signed permutation of absolute values `1..=m`; `perm[a-1]` is the image
/// of `a` and `flip[a-1]` negates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<u32>,
    pub flip: Vec<bool>,
}

impl SignedPermutation {
    pub fn apply(&self, c: Color) -> Color {
        if c == 0 {
            return 0;
        }
        let a = c.unsigned_abs() as usize;
        let img = self.perm[a - 1] as Color;
        let s = if self.flip[a - 1] { -1 } else { 1 };
        c.signum() * s * img
    }

    pub fn apply_lists(&self, lists: &ListAssignment) -> ListAssignment {
        ListAssignment::new(
            lists.mode(),
            lists
                .lists()
                .iter()
                .map(|l| l.iter().map(|&c| self.apply(c)).collect())
                .collect(),
        )
        .expect("relabeling preserves the mode")
    }
}

struct Frame {
    states: Vec<Relabel>,
    next: usize,
}

/// Lazy stream of canonical list systems of `n` lists of size `t`, in
/// increasing lexicographic order.
pub struct CanonicalStream {
    universe: Universe,
    n: usize,
    candidates: Vec<u128>,
    stack: Vec<Frame>,
    prefix: Vec<u128>,
}

impl CanonicalStream {
    pub fn new(n: usize, t: usize, universe: Universe) -> Result<CanonicalStream> {
        if t == 0 || t > universe.size() {
            return Err(Error::CapTooSmall {
                cap: universe.cap(),
                t,
            });
        }
        let stack = if n == 0 {
            Vec::new()
        } else {
            vec![Frame {
                states: vec![Relabel::empty()],
                next: 0,
            }]
        };
        Ok(CanonicalStream {
            universe,
            n,
            candidates: universe.subsets(t),
            stack,
            prefix: Vec::with_capacity(n),
        })
    }

    /// Resumes the stream after the first `index` systems.
    pub fn starting_at(n: usize, t: usize, universe: Universe, index: u64) -> Result<CanonicalStream> {
        let mut s = Self::new(n, t, universe)?;
        for _ in 0..index {
            if s.next().is_none() {
                break;
            }
        }
        Ok(s)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }
}

impl Iterator for CanonicalStream {
    type Item = Vec<u128>;

    fn next(&mut self) -> Option<Vec<u128>> {
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next >= self.candidates.len() {
                self.stack.pop();
                self.prefix.pop();
                continue;
            }
            let cand = self.candidates[frame.next];
            frame.next += 1;
            let (img, tied) = min_image(self.universe, &frame.states, cand);
            if img != cand {
                continue;
            }
            self.prefix.push(cand);
            if self.prefix.len() == self.n {
                let out = self.prefix.clone();
                self.prefix.pop();
                return Some(out);
            }
            self.stack.push(Frame {
                states: tied,
                next: 0,
            });
        }
    }
}
