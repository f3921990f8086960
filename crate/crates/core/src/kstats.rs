//! k-statistics: unbiased estimators of joint cumulants.
//!
//! The estimator of order `k` is a signed sum over every set partition `π` of
//! `{1..k}`:
//!
//! ```text
//! k_[i1..ik] = Σ_π (−1)^{|π|−1} c_π Π_{B∈π} m̂_[i_j | j∈B]
//! ```
//!
//! The coefficient `c_π` depends only on the block sizes of `π`, so it is
//! computed once per integer partition of `k`, exactly, and kept in a
//! [`CoefficientCache`] tied to one sample size `N`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    enumerate_set_partitions, factorial, falling_factorial, profile_of, stirling2,
    BlockSizeProfile, SetPartition,
};
use crate::error::{Error, Result};
use crate::moments::{Dataset, IndexMultiset, MaskedMoments, NeumaierSum};

/// Exact rational value of a coefficient at fixed `N`.
pub type RationalScalar = BigRational;

/// Default limit on the order. `Bell(12)` is already about 4.2 million terms.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Highest order the evaluator accepts even with an explicit override.
pub const HARD_MAX_ORDER: usize = 20;

/// Exact coefficient `c_π` for a block-size profile at sample size `n`.
///
/// ```text
/// c_π = N^{|π|} Σ_{b_1..b_|π|} (Σb − 1)! / (N)_{Σb} · Π_j S(|B_j|, b_j) (b_j − 1)!
/// ```
///
/// with each `b_j` ranging over `1..=|B_j|`. The tuple sum is grouped by
/// `s = Σb`: the weight of each `s` is the coefficient of `x^s` in
/// `Π_j Σ_b S(|B_j|, b)(b − 1)! x^b`.
pub fn coefficient(profile: &BlockSizeProfile, n: usize) -> Result<RationalScalar> {
    let k = profile.order();
    if n < k {
        return Err(Error::InsufficientSampleSize { n, k });
    }
    let mut weights: Vec<BigUint> = vec![BigUint::one()];
    for &size in profile.sizes() {
        let block: Vec<BigUint> = (0..=size)
            .map(|b| {
                if b == 0 {
                    BigUint::zero()
                } else {
                    stirling2(size, b).expect("1 <= b <= size") * factorial(b - 1)
                }
            })
            .collect();
        let mut next = vec![BigUint::zero(); weights.len() + size];
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (b, v) in block.iter().enumerate() {
                if !v.is_zero() {
                    next[i + b] += w * v;
                }
            }
        }
        weights = next;
    }

    let mut sum = BigRational::zero();
    for (s, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let numer = BigInt::from(w * factorial(s - 1));
        let denom = BigInt::from(falling_factorial(n, s).expect("s <= k <= n"));
        sum += BigRational::new(numer, denom);
    }
    Ok(sum * BigRational::from_integer(BigInt::from(n).pow(profile.len() as u32)))
}

/// Coefficients for one sample size, keyed by block-size profile.
///
/// Safe to share between threads. Two threads racing on the same profile
/// may both compute it; the values are identical and the first insert wins.
#[derive(Debug)]
pub struct CoefficientCache {
    n: usize,
    entries: RwLock<HashMap<BlockSizeProfile, Arc<RationalScalar>>>,
    computations: AtomicUsize,
}

impl CoefficientCache {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: RwLock::new(HashMap::new()),
            computations: AtomicUsize::new(0),
        }
    }

    pub fn sample_size(&self) -> usize {
        self.n
    }

    pub fn get(&self, profile: &BlockSizeProfile) -> Result<Arc<RationalScalar>> {
        if let Some(v) = self.entries.read().expect("cache lock").get(profile) {
            return Ok(Arc::clone(v));
        }
        let value = Arc::new(coefficient(profile, self.n)?);
        self.computations.fetch_add(1, Ordering::Relaxed);
        let mut entries = self.entries.write().expect("cache lock");
        Ok(Arc::clone(entries.entry(profile.clone()).or_insert(value)))
    }

    /// Number of stored profiles.
    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// How many times a coefficient was actually evaluated.
    pub fn computations(&self) -> usize {
        self.computations.load(Ordering::Relaxed)
    }

    pub fn snapshot(&self) -> Vec<(BlockSizeProfile, RationalScalar)> {
        let mut out: Vec<_> = self
            .entries
            .read()
            .expect("cache lock")
            .iter()
            .map(|(p, v)| (p.clone(), (**v).clone()))
            .collect();
        out.sort();
        out
    }
}

/// `c_π` for a concrete partition, through the cache.
pub fn coefficient_cached(
    cache: &CoefficientCache,
    pi: &SetPartition,
) -> Result<Arc<RationalScalar>> {
    cache.get(&pi.profile())
}

/// Evaluation limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KStatOptions {
    pub max_order: usize,
}

impl Default for KStatOptions {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// A sample paired with the multiset whose cumulant it estimates.
#[derive(Debug, Clone, Copy)]
pub struct KStatRequest<'a> {
    pub data: &'a Dataset,
    pub idx: &'a IndexMultiset,
}

impl<'a> KStatRequest<'a> {
    pub fn new(data: &'a Dataset, idx: &'a IndexMultiset) -> Self {
        Self { data, idx }
    }

    fn validate(&self, opts: &KStatOptions) -> Result<()> {
        check_order(self.idx.order(), opts)?;
        self.idx.check(self.data.n_cols())?;
        if self.data.n_rows() < self.idx.order() {
            return Err(Error::InsufficientSampleSize {
                n: self.data.n_rows(),
                k: self.idx.order(),
            });
        }
        Ok(())
    }
}

fn check_order(k: usize, opts: &KStatOptions) -> Result<()> {
    let cap = opts.max_order.min(HARD_MAX_ORDER);
    if k > cap {
        return Err(Error::OrderAboveCap { order: k, cap });
    }
    Ok(())
}

/// k-statistic with a fresh cache and default limits.
pub fn k_statistic(data: &Dataset, idx: &IndexMultiset) -> Result<f64> {
    let cache = CoefficientCache::new(data.n_rows());
    k_statistic_with(
        &cache,
        KStatRequest::new(data, idx),
        &KStatOptions::default(),
    )
}

/// k-statistic using a caller-owned cache, which must match the sample size.
///
/// Streams `Π_k` once; the signed terms are accumulated in enumeration order
/// with compensated summation.
pub fn k_statistic_with(
    cache: &CoefficientCache,
    req: KStatRequest<'_>,
    opts: &KStatOptions,
) -> Result<f64> {
    req.validate(opts)?;
    if cache.sample_size() != req.data.n_rows() {
        return Err(Error::HeterogeneousBatch(format!(
            "cache is for N = {}, dataset has N = {}",
            cache.sample_size(),
            req.data.n_rows()
        )));
    }
    let k = req.idx.order();
    let moments = MaskedMoments::new(req.data, req.idx)?;

    let mut coeffs: HashMap<Vec<u8>, f64> = HashMap::new();
    let mut masks = [0u32; HARD_MAX_ORDER];
    let mut sizes = [0u8; HARD_MAX_ORDER];
    let mut acc = NeumaierSum::default();
    let mut stream = enumerate_set_partitions(k)?;
    while stream.advance() {
        let n_blocks = stream.n_blocks();
        masks[..n_blocks].fill(0);
        sizes[..n_blocks].fill(0);
        for (j, &label) in stream.labels().iter().enumerate() {
            masks[label as usize] |= 1 << j;
            sizes[label as usize] += 1;
        }
        let key = &mut sizes[..n_blocks];
        key.sort_unstable_by(|a, b| b.cmp(a));
        let c = match coeffs.get(&key[..]) {
            Some(&c) => c,
            None => {
                let profile = BlockSizeProfile::new(key.iter().map(|&s| s as usize).collect())?;
                let c = cache.get(&profile)?.to_f64().expect("finite coefficient");
                coeffs.insert(key.to_vec(), c);
                c
            }
        };
        let mut term = if n_blocks % 2 == 1 { c } else { -c };
        for &mask in &masks[..n_blocks] {
            term *= moments.get(mask);
        }
        acc.add(term);
    }
    Ok(acc.total())
}

/// A k-statistic compiled for one multiset and sample size.
///
/// Partitions whose blocks select the same moment product are merged, with
/// their signed coefficients added exactly before a single conversion to
/// floating point. Evaluating the plan on a dataset only computes the
/// distinct moments and a short linear combination.
#[derive(Debug, Clone)]
pub struct KStatPlan {
    n: usize,
    idx: IndexMultiset,
    moments: Vec<IndexMultiset>,
    // by increasing order: (moment id, product slot of its prefix, last column)
    chain: Vec<(usize, usize, usize)>,
    terms: Vec<PlanTerm>,
}

#[derive(Debug, Clone)]
struct PlanTerm {
    coefficient: f64,
    factors: Vec<usize>,
}

impl KStatPlan {
    pub fn new(cache: &CoefficientCache, idx: &IndexMultiset, opts: &KStatOptions) -> Result<Self> {
        let k = idx.order();
        check_order(k, opts)?;
        let n = cache.sample_size();
        if n < k {
            return Err(Error::InsufficientSampleSize { n, k });
        }
        let mut moment_ids: HashMap<IndexMultiset, usize> = HashMap::new();
        let mut moments = Vec::new();
        let mut mask_ids = vec![usize::MAX; 1usize << k];
        let mut merged: HashMap<Vec<usize>, BigRational> = HashMap::new();
        let mut order: Vec<Vec<usize>> = Vec::new();

        let mut stream = enumerate_set_partitions(k)?;
        while stream.advance() {
            let n_blocks = stream.n_blocks();
            let labels = stream.labels();
            let mut factors: Vec<usize> = crate::combinatorics::block_masks_of(labels, n_blocks)
                .into_iter()
                .map(|mask| {
                    let slot = &mut mask_ids[mask as usize];
                    if *slot == usize::MAX {
                        let sub = idx.sub_multiset(mask);
                        *slot = *moment_ids.entry(sub.clone()).or_insert_with(|| {
                            moments.push(sub);
                            moments.len() - 1
                        });
                    }
                    *slot
                })
                .collect();
            factors.sort_unstable();
            let c = cache.get(&profile_of(labels, n_blocks))?;
            let signed = if n_blocks % 2 == 1 {
                (*c).clone()
            } else {
                -(*c).clone()
            };
            match merged.get_mut(&factors) {
                Some(total) => *total += signed,
                None => {
                    order.push(factors.clone());
                    merged.insert(factors, signed);
                }
            }
        }
        let terms = order
            .into_iter()
            .filter_map(|factors| {
                let exact = merged.remove(&factors).expect("recorded key");
                (!exact.is_zero()).then(|| PlanTerm {
                    coefficient: exact.to_f64().expect("finite coefficient"),
                    factors,
                })
            })
            .collect();
        let mut by_order: Vec<usize> = (0..moments.len()).collect();
        by_order.sort_by_key(|&id| moments[id].order());
        let mut slot_of = vec![0usize; moments.len()];
        let mut chain = Vec::with_capacity(moments.len());
        for (j, &id) in by_order.iter().enumerate() {
            let (&last, prefix) = moments[id]
                .indices()
                .split_last()
                .expect("non-empty multiset");
            let parent = if prefix.is_empty() {
                0
            } else {
                slot_of[moment_ids[&IndexMultiset::new(prefix.to_vec()).expect("sorted prefix")]]
            };
            slot_of[id] = j + 1;
            chain.push((id, parent, last - 1));
        }
        Ok(Self {
            n,
            idx: idx.clone(),
            moments,
            chain,
            terms,
        })
    }

    pub fn sample_size(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> &IndexMultiset {
        &self.idx
    }

    /// Number of distinct moment products after merging.
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Distinct sub-multisets whose sample moments the plan reads.
    pub fn moments(&self) -> &[IndexMultiset] {
        &self.moments
    }

    pub fn evaluate(&self, data: &Dataset) -> Result<f64> {
        if data.n_rows() != self.n {
            return Err(Error::HeterogeneousBatch(format!(
                "plan is for N = {}, dataset has N = {}",
                self.n,
                data.n_rows()
            )));
        }
        self.idx.check(data.n_cols())?;
        // one pass over the rows; slot 0 holds 1.0 and slot j + 1 the product
        // for chain entry j, built from its prefix slot by one more factor
        let mut products = vec![1.0; self.chain.len() + 1];
        let mut sums = vec![NeumaierSum::default(); self.chain.len()];
        for row in data.rows() {
            for (j, &(_, parent, col)) in self.chain.iter().enumerate() {
                let v = products[parent] * row[col];
                products[j + 1] = v;
                sums[j].add(v);
            }
        }
        let n = data.n_rows() as f64;
        let mut values = vec![0.0; self.moments.len()];
        for (&(id, _, _), sum) in self.chain.iter().zip(&sums) {
            values[id] = sum.total() / n;
        }
        Ok(self.evaluate_moments(&values))
    }

    /// Evaluates from moment values given in the order of [`KStatPlan::moments`].
    pub fn evaluate_moments(&self, values: &[f64]) -> f64 {
        let mut acc = NeumaierSum::default();
        for term in &self.terms {
            let mut t = term.coefficient;
            for &f in &term.factors {
                t *= values[f];
            }
            acc.add(t);
        }
        acc.total()
    }
}

/// Evaluates one k-statistic on every dataset of a batch through one
/// shared cache and compiled plan. All datasets must have equal `N` and `n`.
pub fn k_statistic_batch(datasets: &[Dataset], idx: &IndexMultiset) -> Result<Vec<f64>> {
    k_statistic_batch_with(datasets, idx, &KStatOptions::default())
}

pub fn k_statistic_batch_with(
    datasets: &[Dataset],
    idx: &IndexMultiset,
    opts: &KStatOptions,
) -> Result<Vec<f64>> {
    let Some(first) = datasets.first() else {
        return Ok(Vec::new());
    };
    let (n, n_vars) = (first.n_rows(), first.n_cols());
    if let Some(bad) = datasets
        .iter()
        .position(|d| d.n_rows() != n || d.n_cols() != n_vars)
    {
        return Err(Error::HeterogeneousBatch(format!(
            "dataset {} is {}x{}, expected {n}x{n_vars}",
            bad + 1,
            datasets[bad].n_rows(),
            datasets[bad].n_cols()
        )));
    }
    KStatRequest::new(first, idx).validate(opts)?;
    let cache = CoefficientCache::new(n);
    let plan = KStatPlan::new(&cache, idx, opts)?;
    datasets.iter().map(|d| plan.evaluate(d)).collect()
}

/// Resampling schemes for replicate datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResampleScheme {
    /// Leave-one-out: `N` replicates of size `N − 1`.
    Jackknife,
    /// `count` replicates of size `N`, rows drawn with replacement.
    Bootstrap { count: usize, seed: u64 },
}

pub fn resample(data: &Dataset, scheme: ResampleScheme) -> Result<Vec<Dataset>> {
    let n = data.n_rows();
    match scheme {
        ResampleScheme::Jackknife => {
            if n < 2 {
                return Err(Error::InvalidResample(
                    "jackknife requires at least 2 rows".into(),
                ));
            }
            (0..n)
                .map(|left_out| {
                    let rows: Vec<usize> = (0..n).filter(|&t| t != left_out).collect();
                    data.select_rows(&rows)
                })
                .collect()
        }
        ResampleScheme::Bootstrap { count, seed } => {
            if count == 0 {
                return Err(Error::InvalidResample(
                    "bootstrap count must be positive".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let rows: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                    data.select_rows(&rows)
                })
                .collect()
        }
    }
}

/// Mean and standard error of a replicate vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateSummary {
    pub mean: f64,
    pub stderr: f64,
}

/// Jackknife: `sqrt((n−1)/n · Σ(θ_i − θ̄)²)`. Bootstrap: the replicates'
/// sample standard deviation.
pub fn summarize_replicates(values: &[f64], scheme: ResampleScheme) -> Option<ReplicateSummary> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let mut acc = NeumaierSum::default();
    values.iter().for_each(|&v| acc.add(v));
    let mean = acc.total() / n as f64;
    let mut ss = NeumaierSum::default();
    values.iter().for_each(|&v| ss.add((v - mean) * (v - mean)));
    let ss = ss.total();
    let stderr = match scheme {
        ResampleScheme::Jackknife => ((n - 1) as f64 / n as f64 * ss).sqrt(),
        ResampleScheme::Bootstrap { .. } => (ss / (n - 1) as f64).sqrt(),
    };
    Some(ReplicateSummary { mean, stderr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::integer_partitions;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn profile(sizes: &[usize]) -> BlockSizeProfile {
        BlockSizeProfile::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        for n in [1, 2, 10, 1000] {
            assert_eq!(coefficient(&profile(&[1]), n).unwrap(), BigRational::one());
        }
        assert_eq!(coefficient(&profile(&[2]), 10).unwrap(), ratio(10, 9));
        assert_eq!(coefficient(&profile(&[1, 1, 1]), 10).unwrap(), ratio(25, 9));
        assert_eq!(
            coefficient(&profile(&[2, 2]), 3).unwrap_err(),
            Error::InsufficientSampleSize { n: 3, k: 4 }
        );
        // N = k is allowed
        assert!(coefficient(&profile(&[1, 1, 1]), 3).unwrap() > BigRational::zero());
    }

    #[test]
    fn cache_is_keyed_by_profile() {
        let cache = CoefficientCache::new(10);
        let a = coefficient_cached(&cache, &"{{1},{2,3}}".parse().unwrap()).unwrap();
        let b = coefficient_cached(&cache, &"{{2},{1,3}}".parse().unwrap()).unwrap();
        let c = coefficient_cached(&cache, &"{{3},{1,2}}".parse().unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.computations(), 1);
    }

    #[test]
    fn order_five_cache_population() {
        let data = Dataset::from_columns(&[(0..20).map(|i| (i as f64).sin()).collect::<Vec<_>>()])
            .unwrap();
        let cache = CoefficientCache::new(20);
        let idx = IndexMultiset::repeated(1, 5).unwrap();
        k_statistic_with(
            &cache,
            KStatRequest::new(&data, &idx),
            &KStatOptions::default(),
        )
        .unwrap();
        assert_eq!(cache.len(), 7);
        assert_eq!(cache.computations(), 7);
        k_statistic_with(
            &cache,
            KStatRequest::new(&data, &idx),
            &KStatOptions::default(),
        )
        .unwrap();
        assert_eq!(cache.computations(), 7);
        let mut profiles: Vec<_> = cache.snapshot().into_iter().map(|(p, _)| p).collect();
        let mut expected = integer_partitions(5).unwrap();
        profiles.sort();
        expected.sort();
        assert_eq!(profiles, expected);
    }

    #[test]
    fn first_order_is_mean() {
        let data = Dataset::from_columns(&[vec![1.0, 4.0, 7.0], vec![0.0, 0.0, 3.0]]).unwrap();
        assert_eq!(
            k_statistic(&data, &IndexMultiset::new(vec![1]).unwrap()).unwrap(),
            4.0
        );
        assert_eq!(
            k_statistic(&data, &IndexMultiset::new(vec![2]).unwrap()).unwrap(),
            1.0
        );
    }

    #[test]
    fn second_order_matches_sample_covariance() {
        let data = Dataset::from_columns(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]).unwrap();
        let k = k_statistic(&data, &IndexMultiset::new(vec![1, 2]).unwrap()).unwrap();
        // (3/2)(m_ab − m_a m_b) = (3/2)(28/3 − 8) = 2
        assert!((k - 2.0).abs() < 1e-14, "{k}");
    }

    #[test]
    fn constant_data_has_zero_higher_cumulants() {
        let data = Dataset::from_rows(&vec![vec![3.5, -2.0]; 6]).unwrap();
        for idx in [vec![1, 1], vec![1, 2], vec![1, 1, 2], vec![2, 2, 2]] {
            let k = k_statistic(&data, &IndexMultiset::new(idx).unwrap()).unwrap();
            assert!(k.abs() < 1e-12, "{k}");
        }
    }

    #[test]
    fn errors() {
        let data = Dataset::from_columns(&[vec![1.0, 2.0]]).unwrap();
        assert_eq!(
            k_statistic(&data, &IndexMultiset::repeated(1, 3).unwrap()).unwrap_err(),
            Error::InsufficientSampleSize { n: 2, k: 3 }
        );
        assert!(matches!(
            k_statistic(&data, &IndexMultiset::new(vec![2]).unwrap()),
            Err(Error::InvalidIndex { .. })
        ));
        let long = Dataset::from_columns(&[vec![0.5; 20]]).unwrap();
        assert_eq!(
            k_statistic(&long, &IndexMultiset::repeated(1, 13).unwrap()).unwrap_err(),
            Error::OrderAboveCap { order: 13, cap: 12 }
        );
    }

    #[test]
    fn batch_rejects_mixed_sizes() {
        let a = Dataset::from_columns(&[vec![1.0, 2.0, 3.0]]).unwrap();
        let b = Dataset::from_columns(&[vec![1.0, 2.0]]).unwrap();
        let idx = IndexMultiset::new(vec![1]).unwrap();
        assert!(matches!(
            k_statistic_batch(&[a, b], &idx),
            Err(Error::HeterogeneousBatch(_))
        ));
        assert!(k_statistic_batch(&[], &idx).unwrap().is_empty());
    }

    #[test]
    fn plan_merges_univariate_terms() {
        let cache = CoefficientCache::new(10);
        let plan = KStatPlan::new(
            &cache,
            &IndexMultiset::repeated(1, 5).unwrap(),
            &KStatOptions::default(),
        )
        .unwrap();
        assert_eq!(plan.n_terms(), 7);
        assert_eq!(plan.moments().len(), 5);
        let distinct = KStatPlan::new(
            &cache,
            &IndexMultiset::distinct(4).unwrap(),
            &KStatOptions::default(),
        )
        .unwrap();
        assert_eq!(distinct.n_terms(), 15);
        assert_eq!(distinct.moments().len(), 15);
    }

    #[test]
    fn resampling() {
        let data = Dataset::from_columns(&[vec![1.0, 2.0, 3.0]]).unwrap();
        let jk = resample(&data, ResampleScheme::Jackknife).unwrap();
        assert_eq!(jk.len(), 3);
        assert!(jk.iter().all(|d| d.n_rows() == 2));
        assert_eq!(jk[0].column(0), vec![2.0, 3.0]);

        let scheme = ResampleScheme::Bootstrap { count: 5, seed: 7 };
        let a = resample(&data, scheme).unwrap();
        let b = resample(&data, scheme).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|d| d.n_rows() == 3));
        assert!(a
            .iter()
            .flat_map(|d| d.column(0))
            .all(|v| [1.0, 2.0, 3.0].contains(&v)));

        let single = Dataset::from_columns(&[vec![1.0]]).unwrap();
        assert!(resample(&single, ResampleScheme::Jackknife).is_err());
        assert!(resample(&data, ResampleScheme::Bootstrap { count: 0, seed: 1 }).is_err());
    }

    #[test]
    fn replicate_summaries() {
        let jk = summarize_replicates(&[1.0, 2.0, 3.0], ResampleScheme::Jackknife).unwrap();
        assert_eq!(jk.mean, 2.0);
        assert!((jk.stderr - (2.0f64 / 3.0 * 2.0).sqrt()).abs() < 1e-15);
        let bs = summarize_replicates(
            &[1.0, 2.0, 3.0],
            ResampleScheme::Bootstrap { count: 3, seed: 0 },
        )
        .unwrap();
        assert!((bs.stderr - 1.0).abs() < 1e-15);
        assert!(summarize_replicates(&[1.0], ResampleScheme::Jackknife).is_none());
    }
}
