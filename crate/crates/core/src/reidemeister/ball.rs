//! Union-find enumeration of twisted classes inside a finite box of a
//! faithful model, and inside a ball of normal forms for the other groups.
//!
//! Every element of the box is joined to `ψ(γ) α φ(γ)^-1` for
//! `γ ∈ {a^±1, b^±1}` whenever the image is also in the box. Classes are
//! only ever merged along genuine twists, so counts are upper bounds for the
//! number of classes meeting the box. Elements at least `margin` twist steps
//! away from the boundary form the inner box; the classes meeting it are
//! reported as stable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive};
use serde::Serialize;

use crate::britton::normal_form;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::homs::EndoSpec;
use crate::models::{
    AffineElement, AffineModel, FamilyKind, FreeWord, GroupModel, KleinElement, KleinModel, ModelFamily, ModelKind,
    PermutedModel, PermutedProduct, PowRational,
};
use crate::word::{Gen, Word};

/// Per-coordinate limits of a box, e.g. `u=64,v=8`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BoxBounds {
    entries: BTreeMap<String, i64>,
}

impl BoxBounds {
    pub fn new<'a>(entries: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        BoxBounds { entries: entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
    }

    pub fn get(&self, key: &str) -> i64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn set(&mut self, key: &str, value: i64) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Every limit doubled, except fixed parameters such as the affine
    /// denominator exponent `e`.
    pub fn doubled(&self) -> BoxBounds {
        BoxBounds {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), if k == "e" { *v } else { v * 2 }))
                .collect(),
        }
    }

    /// Overrides `self` with the entries of `other`, rejecting keys that
    /// `self` does not have.
    pub fn merged(&self, other: &BoxBounds) -> Result<BoxBounds> {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            if !self.entries.contains_key(k) {
                let keys: Vec<&str> = self.keys().collect();
                return Err(Error::Syntax {
                    position: 0,
                    token: format!("bound key {k:?} (expected one of {})", keys.join(",")),
                });
            }
            if *v < 0 {
                return Err(Error::Syntax { position: 0, token: format!("{k}={v}") });
            }
            out.set(k, *v);
        }
        Ok(out)
    }
}

impl fmt::Display for BoxBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BoxBounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Syntax { position: 0, token: part.to_string() };
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            entries.insert(k.trim().to_string(), v);
        }
        Ok(BoxBounds { entries })
    }
}

/// A model whose elements can be boxed by integer coordinates.
pub trait BallModel: GroupModel {
    fn default_bounds(&self) -> BoxBounds;
    fn elements(&self, bounds: &BoxBounds) -> Vec<Self::Element>;
    fn contains(&self, bounds: &BoxBounds, x: &Self::Element) -> bool;
    /// Coordinate sizes of `x`, used to size the margin of the inner box.
    fn footprint(&self, bounds: &BoxBounds, x: &Self::Element) -> BoxBounds;
}

impl BallModel for KleinModel {
    fn default_bounds(&self) -> BoxBounds {
        BoxBounds::new([("u", 64), ("v", 8)])
    }

    fn elements(&self, b: &BoxBounds) -> Vec<KleinElement> {
        let (u, v) = (b.get("u"), b.get("v"));
        (-v..=v).flat_map(|y| (-u..=u).map(move |x| KleinElement::new(x, y))).collect()
    }

    fn contains(&self, b: &BoxBounds, x: &KleinElement) -> bool {
        x.u.abs() <= b.get("u") && x.v.abs() <= b.get("v")
    }

    fn footprint(&self, _b: &BoxBounds, x: &KleinElement) -> BoxBounds {
        BoxBounds::new([("u", x.u.abs()), ("v", x.v.abs())])
    }
}

/// Translations are boxed as `p / |n|^e` with `|p| <= t` at the fixed
/// exponent `e`.
impl BallModel for AffineModel {
    fn default_bounds(&self) -> BoxBounds {
        BoxBounds::new([("k", 4), ("t", 64), ("e", 2)])
    }

    fn elements(&self, b: &BoxBounds) -> Vec<AffineElement> {
        let (k, t, e) = (b.get("k"), b.get("t"), exponent(b));
        (-k..=k)
            .flat_map(|kk| {
                (-t..=t).map(move |p| self.element(PowRational::new(BigInt::from(p), e, self.base()), kk))
            })
            .collect()
    }

    fn contains(&self, b: &BoxBounds, x: &AffineElement) -> bool {
        x.k.abs() <= b.get("k")
            && x.translation_numerator(exponent(b)).is_some_and(|p| p.abs() <= BigInt::from(b.get("t")))
    }

    fn footprint(&self, b: &BoxBounds, x: &AffineElement) -> BoxBounds {
        let scale = BigRational::from_integer(Pow::pow(BigInt::from(self.base()), exponent(b)));
        let t = (x.t.to_rational() * scale).abs().ceil().to_integer();
        BoxBounds::new([("k", x.k.abs()), ("t", t.to_i64().unwrap_or(i64::MAX)), ("e", 0)])
    }
}

fn exponent(b: &BoxBounds) -> u32 {
    u32::try_from(b.get("e")).unwrap_or(0)
}

/// Free words are boxed by letter length `l`, the shift by `|k| <= k`.
impl BallModel for PermutedModel {
    fn default_bounds(&self) -> BoxBounds {
        BoxBounds::new([("l", 4), ("k", 4)])
    }

    fn elements(&self, b: &BoxBounds) -> Vec<PermutedProduct> {
        let words = free_words(self.rank(), b.get("l"));
        let k = b.get("k");
        (-k..=k)
            .flat_map(|kk| words.iter().map(move |w| PermutedProduct { w: w.clone(), k: kk }))
            .collect()
    }

    fn contains(&self, b: &BoxBounds, x: &PermutedProduct) -> bool {
        x.k.abs() <= b.get("k") && x.w.letter_len() <= b.get("l").max(0) as u64
    }

    fn footprint(&self, _b: &BoxBounds, x: &PermutedProduct) -> BoxBounds {
        BoxBounds::new([("l", x.w.letter_len() as i64), ("k", x.k.abs())])
    }
}

/// Reduced words of length `0..=max` in `x_1^±1, ..., x_rank^±1`.
fn free_words(rank: u32, max: i64) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity()];
    let mut layer = vec![FreeWord::identity()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for j in 0..rank {
                for e in [1, -1] {
                    if w.syllables().last().is_some_and(|&(i, x)| i == j && x.signum() == -e) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(j, e);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Union-find over an indexed element list.
#[derive(Debug, Clone)]
pub struct Partition<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    parent: Vec<usize>,
    merged_pairs: Vec<(usize, usize)>,
}

impl<E: Clone + Eq + Hash> Partition<E> {
    fn new(elements: Vec<E>) -> Self {
        let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let parent = (0..elements.len()).collect();
        Partition { elements, index, parent, merged_pairs: Vec::new() }
    }

    fn root(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn find_mut(&mut self, i: usize) -> usize {
        let r = self.root(i);
        let mut j = i;
        while self.parent[j] != r {
            let next = self.parent[j];
            self.parent[j] = r;
            j = next;
        }
        r
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find_mut(i), self.find_mut(j));
        if ri != rj {
            // smaller index becomes the root, keeping the result order independent
            let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
            self.parent[hi] = lo;
            self.merged_pairs.push((i, j));
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn class_of(&self, x: &E) -> Option<usize> {
        self.index.get(x).map(|&i| self.root(i))
    }

    /// `None` when either element is outside the box.
    pub fn same_class(&self, x: &E, y: &E) -> Option<bool> {
        Some(self.class_of(x)? == self.class_of(y)?)
    }

    pub fn merges(&self) -> usize {
        self.merged_pairs.len()
    }

    /// The twist edges that joined two previously separate classes.
    pub fn merged_pairs(&self) -> impl Iterator<Item = (&E, &E)> {
        self.merged_pairs.iter().map(|&(i, j)| (&self.elements[i], &self.elements[j]))
    }

    pub fn class_count(&self) -> usize {
        (0..self.elements.len()).filter(|&i| self.root(i) == i).count()
    }

    /// Number of classes meeting the elements selected by `keep`.
    pub fn class_count_where(&self, keep: impl Fn(&E) -> bool) -> usize {
        let mut roots: Vec<usize> = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, x)| keep(x))
            .map(|(i, _)| self.root(i))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

/// `(ψ(γ), φ(γ)^-1)` for `γ ∈ {a, a^-1, b, b^-1}`.
type Twists<E> = Vec<(E, E)>;

fn model_twists<M: GroupModel>(model: &M, family: &ModelFamily, phi: &EndoSpec, psi: &EndoSpec) -> Result<Twists<M::Element>> {
    let embed = |w: &Word| model.embed(&family.standardize_word(w));
    let mut out = Vec::with_capacity(4);
    for gen in [Gen::A, Gen::B] {
        let left = embed(psi.image(gen))?;
        let right = model.inverse(&embed(phi.image(gen))?);
        out.push((model.inverse(&left), model.inverse(&right)));
        out.push((left, right));
    }
    Ok(out)
}

fn partition_in_box<M>(model: &M, twists: &Twists<M::Element>, bounds: &BoxBounds, jobs: usize) -> Partition<M::Element>
where
    M: BallModel + Sync,
{
    let mut partition = Partition::new(model.elements(bounds));
    let edges_for = |range: std::ops::Range<usize>, p: &Partition<M::Element>| -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in range {
            let x = &p.elements[i];
            for (left, right) in twists {
                let y = model.mul(&model.mul(left, x), right);
                if model.contains(bounds, &y) {
                    if let Some(&j) = p.index.get(&y) {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges
    };

    let n = partition.len();
    let jobs = jobs.max(1).min(n.max(1));
    let chunks: Vec<Vec<(usize, usize)>> = if jobs == 1 {
        vec![edges_for(0..n, &partition)]
    } else {
        let size = n.div_ceil(jobs);
        let p = &partition;
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|t| {
                    let range = (t * size).min(n)..((t + 1) * size).min(n);
                    s.spawn(move || edges_for(range, p))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("edge worker panicked")).collect()
        })
    };
    // single owner applies the unions in chunk order, so the result does not
    // depend on the number of workers
    for chunk in chunks {
        for (i, j) in chunk {
            partition.union(i, j);
        }
    }
    partition
}

fn inner_bounds<M: BallModel>(model: &M, twists: &Twists<M::Element>, bounds: &BoxBounds, margin: u32) -> Result<BoxBounds> {
    let mut inner = bounds.clone();
    let keys: Vec<String> = bounds.keys().map(str::to_string).collect();
    for key in keys {
        let step = twists
            .iter()
            .flat_map(|(l, r)| [model.footprint(bounds, l).get(&key), model.footprint(bounds, r).get(&key)])
            .max()
            .unwrap_or(0);
        let value = bounds.get(&key) - i64::from(margin) * step;
        if value < 0 {
            return Err(Error::BoxTooSmall);
        }
        inner.set(&key, value);
    }
    Ok(inner)
}

/// Summary of one enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub group: String,
    pub family: FamilyKind,
    pub bounds: BoxBounds,
    pub inner_bounds: BoxBounds,
    pub margin: u32,
    pub total_elements: usize,
    pub merges: usize,
    /// Classes meeting the inner box.
    pub stable_classes: usize,
    /// All classes of the box, boundary fragments included.
    pub tentative_classes: usize,
    pub doubled_bounds: BoxBounds,
    pub doubled_stable_classes: usize,
    /// Whether the stable count is the same at `bounds` and `bounds x 2`.
    pub stabilized: bool,
}

impl BallReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for BallReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {} ({})", self.group, self.family)?;
        writeln!(f, "bounds: {} (inner {} at margin {})", self.bounds, self.inner_bounds, self.margin)?;
        writeln!(f, "elements: {}, merges: {}", self.total_elements, self.merges)?;
        writeln!(f, "stable classes: {}", self.stable_classes)?;
        writeln!(f, "tentative classes: {}", self.tentative_classes)?;
        writeln!(
            f,
            "stable classes at {}: {} (stabilized: {})",
            self.doubled_bounds, self.doubled_stable_classes, self.stabilized
        )
    }
}

/// Result of one box enumeration before the doubled run.
struct Counts {
    inner: BoxBounds,
    total: usize,
    merges: usize,
    stable: usize,
    tentative: usize,
}

fn count_in_box<M>(model: &M, twists: &Twists<M::Element>, bounds: &BoxBounds, margin: u32, jobs: usize) -> Result<Counts>
where
    M: BallModel + Sync,
{
    let inner = inner_bounds(model, twists, bounds, margin)?;
    let partition = partition_in_box(model, twists, bounds, jobs);
    let stable = partition.class_count_where(|x| model.contains(&inner, x));
    if stable == 0 {
        return Err(Error::BoxTooSmall);
    }
    Ok(Counts {
        inner,
        total: partition.len(),
        merges: partition.merges(),
        stable,
        tentative: partition.class_count(),
    })
}

fn report_for<M>(
    model: &M,
    family: &ModelFamily,
    phi: &EndoSpec,
    psi: &EndoSpec,
    bounds: Option<&BoxBounds>,
    margin: u32,
    jobs: usize,
) -> Result<BallReport>
where
    M: BallModel + Sync,
{
    let bounds = match bounds {
        Some(b) => model.default_bounds().merged(b)?,
        None => model.default_bounds(),
    };
    let twists = model_twists(model, family, phi, psi)?;
    let counts = count_in_box(model, &twists, &bounds, margin, jobs)?;
    let doubled = bounds.doubled();
    let doubled_counts = count_in_box(model, &twists, &doubled, margin, jobs)?;
    Ok(BallReport {
        group: family.group().to_string(),
        family: family.family(),
        bounds,
        inner_bounds: counts.inner,
        margin,
        total_elements: counts.total,
        merges: counts.merges,
        stable_classes: counts.stable,
        tentative_classes: counts.tentative,
        doubled_bounds: doubled,
        doubled_stable_classes: doubled_counts.stable,
        stabilized: counts.stable == doubled_counts.stable,
    })
}

fn check_specs(group: &GroupSpec, phi: &EndoSpec, psi: &EndoSpec) -> Result<()> {
    for spec in [phi, psi] {
        if spec.group() != group {
            return Err(Error::GroupMismatch(group.to_string(), spec.group().to_string()));
        }
        crate::homs::endo_validate(spec)?;
    }
    Ok(())
}

/// Enumerates the classes of `α ~ ψ(γ) α φ(γ)^-1` inside `bounds` (model
/// defaults for missing keys) and again inside the doubled box.
pub fn enumerate_classes_ball(
    group: &GroupSpec,
    phi: &EndoSpec,
    psi: &EndoSpec,
    bounds: Option<&BoxBounds>,
    margin: u32,
    jobs: usize,
) -> Result<BallReport> {
    check_specs(group, phi, psi)?;
    let family = ModelFamily::for_group(group)?;
    match *family.kind() {
        ModelKind::Affine(m) => report_for(&m, &family, phi, psi, bounds, margin, jobs),
        ModelKind::Permuted(m) => report_for(&m, &family, phi, psi, bounds, margin, jobs),
        ModelKind::Klein(m) => report_for(&m, &family, phi, psi, bounds, margin, jobs),
    }
}

/// The default box of the model used for `group`.
pub fn default_bounds(group: &GroupSpec) -> Result<BoxBounds> {
    let family = ModelFamily::for_group(group)?;
    Ok(match family.kind() {
        ModelKind::Affine(m) => m.default_bounds(),
        ModelKind::Permuted(m) => m.default_bounds(),
        ModelKind::Klein(m) => m.default_bounds(),
    })
}

#[derive(Debug, Clone)]
enum AnyPartition {
    Affine(AffineModel, Partition<AffineElement>),
    Permuted(PermutedModel, Partition<PermutedProduct>),
    Klein(Partition<KleinElement>),
}

/// A box partition queried by words of the source group.
#[derive(Debug, Clone)]
pub struct BallPartition {
    family: ModelFamily,
    partition: AnyPartition,
}

impl BallPartition {
    /// `None` when either word lands outside the box.
    pub fn same_class(&self, u: &Word, v: &Word) -> Result<Option<bool>> {
        let (u, v) = (self.family.standardize_word(u), self.family.standardize_word(v));
        Ok(match &self.partition {
            AnyPartition::Affine(m, p) => p.same_class(&m.embed(&u)?, &m.embed(&v)?),
            AnyPartition::Permuted(m, p) => p.same_class(&m.embed(&u)?, &m.embed(&v)?),
            AnyPartition::Klein(p) => p.same_class(&KleinModel.embed(&u)?, &KleinModel.embed(&v)?),
        })
    }

    pub fn merges(&self) -> usize {
        match &self.partition {
            AnyPartition::Affine(_, p) => p.merges(),
            AnyPartition::Permuted(_, p) => p.merges(),
            AnyPartition::Klein(p) => p.merges(),
        }
    }

    pub fn class_count(&self) -> usize {
        match &self.partition {
            AnyPartition::Affine(_, p) => p.class_count(),
            AnyPartition::Permuted(_, p) => p.class_count(),
            AnyPartition::Klein(p) => p.class_count(),
        }
    }

    /// Every merged pair, as words of the source group.
    pub fn merged_word_pairs(&self) -> Vec<(Word, Word)> {
        let back = |w: Word| self.family.standardize_word(&w);
        match &self.partition {
            AnyPartition::Affine(m, p) => p.merged_pairs().map(|(x, y)| (back(m.to_word(x)), back(m.to_word(y)))).collect(),
            AnyPartition::Permuted(m, p) => {
                p.merged_pairs().map(|(x, y)| (back(m.to_word(x)), back(m.to_word(y)))).collect()
            }
            AnyPartition::Klein(p) => {
                p.merged_pairs().map(|(x, y)| (back(KleinModel.to_word(x)), back(KleinModel.to_word(y)))).collect()
            }
        }
    }
}

/// The raw partition of a model box, for cross-checks.
pub fn ball_partition(group: &GroupSpec, phi: &EndoSpec, psi: &EndoSpec, bounds: Option<&BoxBounds>) -> Result<BallPartition> {
    check_specs(group, phi, psi)?;
    let family = ModelFamily::for_group(group)?;
    let partition = match *family.kind() {
        ModelKind::Affine(m) => {
            let b = bounds.map_or_else(|| Ok(m.default_bounds()), |b| m.default_bounds().merged(b))?;
            AnyPartition::Affine(m, partition_in_box(&m, &model_twists(&m, &family, phi, psi)?, &b, 1))
        }
        ModelKind::Permuted(m) => {
            let b = bounds.map_or_else(|| Ok(m.default_bounds()), |b| m.default_bounds().merged(b))?;
            AnyPartition::Permuted(m, partition_in_box(&m, &model_twists(&m, &family, phi, psi)?, &b, 1))
        }
        ModelKind::Klein(m) => {
            let b = bounds.map_or_else(|| Ok(m.default_bounds()), |b| m.default_bounds().merged(b))?;
            AnyPartition::Klein(partition_in_box(&m, &model_twists(&m, &family, phi, psi)?, &b, 1))
        }
    };
    Ok(BallPartition { family, partition })
}

/// Partition of the normal forms of all words of letter length at most
/// `radius`, plus `extra`, for groups without a model.
pub fn word_ball_partition(
    phi: &EndoSpec,
    psi: &EndoSpec,
    radius: u32,
    extra: &[Word],
) -> Result<WordBall> {
    let group = *phi.group();
    check_specs(&group, phi, psi)?;
    let mut words = letter_words(radius);
    words.extend(extra.iter().cloned());
    let mut keys: Vec<Word> = words.iter().map(|w| normal_form(w, &group).into_word()).collect();
    keys.sort_by_cached_key(|w| w.to_string());
    keys.dedup();
    let mut partition = Partition::new(keys);

    let mut twists = Vec::new();
    for gen in [Gen::A, Gen::B] {
        let left = psi.image(gen).clone();
        let right = phi.image(gen).inverse();
        twists.push((left.inverse(), right.inverse()));
        twists.push((left, right));
    }
    for i in 0..partition.len() {
        for (left, right) in &twists {
            let y = normal_form(&left.multiply(&partition.elements[i]).multiply(right), &group).into_word();
            if let Some(&j) = partition.index.get(&y) {
                partition.union(i, j);
            }
        }
    }
    Ok(WordBall { group, partition })
}

/// See [`word_ball_partition`].
#[derive(Debug, Clone)]
pub struct WordBall {
    group: GroupSpec,
    partition: Partition<Word>,
}

impl WordBall {
    pub fn same_class(&self, u: &Word, v: &Word) -> Option<bool> {
        let key = |w: &Word| normal_form(w, &self.group).into_word();
        self.partition.same_class(&key(u), &key(v))
    }

    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    pub fn merges(&self) -> usize {
        self.partition.merges()
    }

    pub fn merged_pairs(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.partition.merged_pairs()
    }
}

/// Freely reduced words of letter length `0..=radius`.
fn letter_words(radius: u32) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for (gen, e) in [(Gen::A, 1), (Gen::A, -1), (Gen::B, 1), (Gen::B, -1)] {
                if w.syllables().last().is_some_and(|s| s.gen == gen && s.exp.signum() == BigInt::from(-e)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(gen, BigInt::from(e));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
