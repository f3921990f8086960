//! Exact ground truth for the estimators.
//!
//! Everything here is rational arithmetic end to end. Expectations of a
//! statistic are computed by enumerating every `N`-tuple of support points of
//! a finite distribution, weighting each by its probability.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};

use crate::combinatorics::{
    block_masks_of, coarsenings, enumerate_set_partitions, factorial, falling_factorial,
    mobius_weight_coarsening, profile_of, SetPartition,
};
use crate::error::{Error, Result};
use crate::kstats::{CoefficientCache, KStatOptions, KStatPlan};
use crate::moments::{Dataset, IndexMultiset, NeumaierSum};
use crate::symbolic::cumulant_from_moments_terms;

/// Largest number of sample tuples enumerated by default.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Finite distribution over points of `Q^n` with rational probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    name: String,
    support: Vec<Vec<BigRational>>,
    probabilities: Vec<BigRational>,
}

impl DiscreteDistribution {
    pub fn new(
        name: impl Into<String>,
        support: Vec<Vec<BigRational>>,
        probabilities: Vec<BigRational>,
    ) -> Result<Self> {
        let invalid = |m: &str| Err(Error::InvalidDistribution(m.into()));
        if support.is_empty() || support.len() != probabilities.len() {
            return invalid("support and probabilities must be non-empty and equally long");
        }
        let dim = support[0].len();
        if dim == 0 || support.iter().any(|p| p.len() != dim) {
            return invalid("support points must share a positive dimension");
        }
        if probabilities.iter().any(|p| !p.is_positive()) {
            return invalid("probabilities must be positive");
        }
        if probabilities.iter().sum::<BigRational>() != BigRational::one() {
            return invalid("probabilities must sum to 1");
        }
        for (a, p) in support.iter().enumerate() {
            if support[a + 1..].contains(p) {
                return invalid("support points must be distinct");
            }
        }
        Ok(Self {
            name: name.into(),
            support,
            probabilities,
        })
    }

    /// Univariate distribution on integer points.
    pub fn univariate(name: &str, points: &[i64], probabilities: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            name,
            points
                .iter()
                .map(|&x| vec![BigRational::from_integer(x.into())])
                .collect(),
            probabilities.iter().map(|&(n, d)| rat(n, d)).collect(),
        )
    }

    pub fn point_mass(point: Vec<BigRational>) -> Result<Self> {
        Self::new("point mass", vec![point], vec![BigRational::one()])
    }

    /// Independent coupling: the joint law of `(X, Y)` with `X ~ self`, `Y ~ other`.
    pub fn product(&self, other: &Self) -> Self {
        let mut support = Vec::new();
        let mut probabilities = Vec::new();
        for (x, p) in self.support.iter().zip(&self.probabilities) {
            for (y, q) in other.support.iter().zip(&other.probabilities) {
                support.push(x.iter().chain(y).cloned().collect());
                probabilities.push(p * q);
            }
        }
        Self {
            name: format!("{} x {}", self.name, other.name),
            support,
            probabilities,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.support[0].len()
    }

    pub fn support(&self) -> &[Vec<BigRational>] {
        &self.support
    }

    pub fn probabilities(&self) -> &[BigRational] {
        &self.probabilities
    }
}

/// `{0, 1}` with `P(1) = 1/3`.
pub fn skewed_coin() -> DiscreteDistribution {
    DiscreteDistribution::univariate("coin(1/3)", &[0, 1], &[(2, 3), (1, 3)])
        .expect("valid fixture")
}

/// `{−1, 0, 2}` with probabilities `(1/2, 1/3, 1/6)`.
pub fn three_point() -> DiscreteDistribution {
    DiscreteDistribution::univariate("three-point", &[-1, 0, 2], &[(1, 2), (1, 3), (1, 6)])
        .expect("valid fixture")
}

/// `{0, 1}` with `P(1) = 1/2`.
pub fn fair_coin() -> DiscreteDistribution {
    DiscreteDistribution::univariate("fair coin", &[0, 1], &[(1, 2), (1, 2)])
        .expect("valid fixture")
}

/// The three verification fixtures: skewed coin, three-point law, and their
/// independent product in two dimensions.
pub fn fixture_distributions() -> Vec<DiscreteDistribution> {
    let coin = skewed_coin();
    let three = three_point();
    let joint = coin.product(&three);
    vec![coin, three, joint]
}

/// Exact raw moments of a distribution keyed by index multiset.
#[derive(Debug, Clone, Default)]
pub struct ExactMomentSet {
    moments: HashMap<IndexMultiset, BigRational>,
}

impl ExactMomentSet {
    /// Moments for every sub-multiset of `idx`.
    pub fn for_index(dist: &DiscreteDistribution, idx: &IndexMultiset) -> Result<Self> {
        idx.check(dist.dim())?;
        let mut moments = HashMap::new();
        for mask in 1..(1u32 << idx.order()) {
            let sub = idx.sub_multiset(mask);
            if let Entry::Vacant(slot) = moments.entry(sub) {
                let m = raw_moment_unchecked(dist, slot.key());
                slot.insert(m);
            }
        }
        Ok(Self { moments })
    }

    pub fn get(&self, idx: &IndexMultiset) -> Option<&BigRational> {
        self.moments.get(idx)
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }
}

fn point_product(point: &[BigRational], idx: &IndexMultiset) -> BigRational {
    idx.indices()
        .iter()
        .fold(BigRational::one(), |acc, &i| acc * &point[i - 1])
}

fn raw_moment_unchecked(dist: &DiscreteDistribution, idx: &IndexMultiset) -> BigRational {
    dist.support
        .iter()
        .zip(&dist.probabilities)
        .map(|(x, p)| p * point_product(x, idx))
        .sum()
}

/// `m_idx = Σ_s p_s Π_j x_{s,i_j}`.
pub fn exact_raw_moment(dist: &DiscreteDistribution, idx: &IndexMultiset) -> Result<BigRational> {
    idx.check(dist.dim())?;
    Ok(raw_moment_unchecked(dist, idx))
}

/// Cumulant from exact moments: `Σ_π (−1)^{|π|−1}(|π|−1)! Π_B m_B`.
pub fn exact_cumulant(dist: &DiscreteDistribution, idx: &IndexMultiset) -> Result<BigRational> {
    let moments = ExactMomentSet::for_index(dist, idx)?;
    let mut total = BigRational::zero();
    for (product, c) in cumulant_from_moments_terms(idx)? {
        let value = product
            .factors()
            .iter()
            .fold(BigRational::from_integer(c), |acc, s| {
                acc * &moments.moments[s]
            });
        total += value;
    }
    Ok(total)
}

/// Observations with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSample {
    rows: Vec<Vec<BigRational>>,
}

impl RationalSample {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n_cols = rows[0].len();
        if n_cols == 0 {
            return Err(Error::NoColumns);
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::RaggedRow {
                row: bad + 1,
                found: rows[bad].len(),
                expected: n_cols,
            });
        }
        Ok(Self { rows })
    }

    /// Converts every entry of a floating-point dataset exactly.
    pub fn from_dataset(data: &Dataset) -> Self {
        let rows = data
            .rows()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from_f64(v).expect("finite"))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    /// `(1/N) Σ_t Π_j x_{t,i_j}` exactly.
    pub fn moment(&self, idx: &IndexMultiset) -> Result<BigRational> {
        idx.check(self.n_cols())?;
        let sum: BigRational = self.rows.iter().map(|r| point_product(r, idx)).sum();
        Ok(sum / BigRational::from_integer(BigInt::from(self.rows.len())))
    }
}

fn check_sample_size(n: usize, k: usize) -> Result<()> {
    if n < k {
        return Err(Error::InsufficientSampleSize { n, k });
    }
    Ok(())
}

/// k-statistic evaluated exactly, one term per partition.
pub fn rational_k_statistic(sample: &RationalSample, idx: &IndexMultiset) -> Result<BigRational> {
    check_sample_size(sample.n_rows(), idx.order())?;
    let cache = CoefficientCache::new(sample.n_rows());
    let mut total = BigRational::zero();
    for pi in enumerate_set_partitions(idx.order())? {
        let c = cache.get(&pi.profile())?;
        let mut term = if pi.size() % 2 == 1 {
            (*c).clone()
        } else {
            -(*c).clone()
        };
        for block in pi.blocks() {
            term *= sample.moment(&idx.select(&block))?;
        }
        total += term;
    }
    Ok(total)
}

/// Rational k-statistic with partitions merged by moment product.
struct RationalPlan {
    moments: Vec<IndexMultiset>,
    terms: Vec<(BigRational, Vec<usize>)>,
}

impl RationalPlan {
    fn new(idx: &IndexMultiset, n: usize) -> Result<Self> {
        let cache = CoefficientCache::new(n);
        let mut ids: HashMap<IndexMultiset, usize> = HashMap::new();
        let mut moments = Vec::new();
        let mut merged: HashMap<Vec<usize>, BigRational> = HashMap::new();
        let mut stream = enumerate_set_partitions(idx.order())?;
        while stream.advance() {
            let n_blocks = stream.n_blocks();
            let labels = stream.labels();
            let mut factors: Vec<usize> = block_masks_of(labels, n_blocks)
                .into_iter()
                .map(|mask| {
                    let sub = idx.sub_multiset(mask);
                    *ids.entry(sub.clone()).or_insert_with(|| {
                        moments.push(sub);
                        moments.len() - 1
                    })
                })
                .collect();
            factors.sort_unstable();
            let c = cache.get(&profile_of(labels, n_blocks))?;
            let signed = if n_blocks % 2 == 1 {
                (*c).clone()
            } else {
                -(*c).clone()
            };
            *merged.entry(factors).or_insert_with(BigRational::zero) += signed;
        }
        let mut terms: Vec<_> = merged.into_iter().map(|(f, c)| (c, f)).collect();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(Self { moments, terms })
    }

    fn evaluate(&self, moments: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(c, factors)| factors.iter().fold(c.clone(), |acc, &f| acc * &moments[f]))
            .sum()
    }
}

/// Number of sample tuples, checked against the budget.
pub fn enumeration_size(dist: &DiscreteDistribution, n: usize, budget: u128) -> Result<u128> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(dist.support.len() as u128);
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
    }
    Ok(size)
}

/// Visits every `N`-tuple of support indices (odometer order) with its probability.
fn for_each_tuple(
    dist: &DiscreteDistribution,
    n: usize,
    budget: u128,
    mut visit: impl FnMut(&[usize], &BigRational) -> Result<()>,
) -> Result<()> {
    enumeration_size(dist, n, budget)?;
    let s = dist.support.len();
    let mut tuple = vec![0usize; n];
    loop {
        let weight = tuple
            .iter()
            .fold(BigRational::one(), |acc, &a| acc * &dist.probabilities[a]);
        visit(&tuple, &weight)?;
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(());
            }
            tuple[pos] += 1;
            if tuple[pos] < s {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Visits every occupancy vector `c` (how many draws hit each support point,
/// `Σc = n`) with its probability `n!/Πc_a! · Π p_a^{c_a}`.
fn for_each_count_vector(
    dist: &DiscreteDistribution,
    n: usize,
    budget: u128,
    mut visit: impl FnMut(&[usize], &BigRational) -> Result<()>,
) -> Result<()> {
    enumeration_size(dist, n, budget)?;
    let s = dist.support.len();
    let n_fact = BigInt::from(factorial(n));
    let mut counts = vec![0usize; s];
    counts[0] = n;
    loop {
        let mut weight = BigRational::from_integer(n_fact.clone());
        for (c, p) in counts.iter().zip(&dist.probabilities) {
            weight *= p.pow(*c as i32);
            weight /= BigRational::from_integer(BigInt::from(factorial(*c)));
        }
        visit(&counts, &weight)?;
        // next composition in lexicographically decreasing order
        let Some(j) = (0..s - 1).rev().find(|&a| counts[a] > 0) else {
            return Ok(());
        };
        let rest = counts[s - 1];
        counts[s - 1] = 0;
        counts[j] -= 1;
        counts[j + 1] = rest + 1;
    }
}

/// `E[f(sample)]` over every sample of size `n`, exactly, visiting each
/// ordered tuple of draws.
pub fn exact_expectation(
    dist: &DiscreteDistribution,
    n: usize,
    budget: u128,
    mut statistic: impl FnMut(&RationalSample) -> Result<BigRational>,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for_each_tuple(dist, n, budget, |tuple, weight| {
        let rows = tuple.iter().map(|&a| dist.support[a].clone()).collect();
        total += weight * statistic(&RationalSample { rows })?;
        Ok(())
    })?;
    Ok(total)
}

/// Same as [`exact_expectation`] for statistics that ignore row order:
/// each multiset of draws is visited once with its multinomial weight.
/// The budget still applies to the number of ordered tuples.
pub fn exact_expectation_symmetric(
    dist: &DiscreteDistribution,
    n: usize,
    budget: u128,
    mut statistic: impl FnMut(&RationalSample) -> Result<BigRational>,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for_each_count_vector(dist, n, budget, |counts, weight| {
        let rows = counts
            .iter()
            .enumerate()
            .flat_map(|(a, &c)| std::iter::repeat_n(&dist.support[a], c).cloned())
            .collect();
        total += weight * statistic(&RationalSample { rows })?;
        Ok(())
    })?;
    Ok(total)
}

/// Exact expectation of the order-`k` k-statistic over all samples of size `n`.
pub fn exact_expectation_of_kstat(
    dist: &DiscreteDistribution,
    n: usize,
    idx: &IndexMultiset,
    budget: u128,
) -> Result<BigRational> {
    idx.check(dist.dim())?;
    check_sample_size(n, idx.order())?;
    enumeration_size(dist, n, budget)?;
    let plan = RationalPlan::new(idx, n)?;
    // per support point, the product for every needed moment
    let point_values: Vec<Vec<BigRational>> = dist
        .support
        .iter()
        .map(|x| plan.moments.iter().map(|m| point_product(x, m)).collect())
        .collect();
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut total = BigRational::zero();
    for_each_count_vector(dist, n, budget, |counts, weight| {
        let moments: Vec<BigRational> = (0..plan.moments.len())
            .map(|m| {
                let sum: BigRational = counts
                    .iter()
                    .zip(&point_values)
                    .filter(|(&c, _)| c > 0)
                    .map(|(&c, v)| BigRational::from_integer(BigInt::from(c)) * &v[m])
                    .sum();
                sum * &inv_n
            })
            .collect();
        total += weight * plan.evaluate(&moments);
        Ok(())
    })?;
    Ok(total)
}

/// Unbiased estimator of `Π_{B∈π} m_B`:
///
/// ```text
/// m̂_π = 1/(N)_{|π|} Σ_{ρ≥π} μ(π,ρ) N^{|ρ|} Π_{C∈ρ} m̂_C
/// ```
///
/// where `μ(π,ρ) = (−1)^{|π|−|ρ|} Π_{σ∈Σ(π,ρ)} (|σ|−1)!`.
pub fn mhat_product_estimator(
    sample: &RationalSample,
    idx: &IndexMultiset,
    pi: &SetPartition,
) -> Result<BigRational> {
    if pi.ground_size() != idx.order() {
        return Err(Error::GroundSetMismatch {
            left: pi.ground_size(),
            right: idx.order(),
        });
    }
    let n = sample.n_rows();
    check_sample_size(n, idx.order())?;
    let n_big = BigInt::from(n);
    let mut total = BigRational::zero();
    for rho in coarsenings(pi) {
        let weight = mobius_weight_coarsening(pi, &rho)? * n_big.pow(rho.size() as u32);
        let mut term = BigRational::from_integer(weight);
        for block in rho.blocks() {
            term *= sample.moment(&idx.select(&block))?;
        }
        total += term;
    }
    let falling = BigInt::from(falling_factorial(n, pi.size())?);
    Ok(total / BigRational::from_integer(falling))
}

/// `Π_{B∈π} m̂_B` computed exactly on one sample.
pub fn sample_moment_product(
    sample: &RationalSample,
    idx: &IndexMultiset,
    pi: &SetPartition,
) -> Result<BigRational> {
    pi.blocks().iter().try_fold(BigRational::one(), |acc, b| {
        Ok(acc * sample.moment(&idx.select(b))?)
    })
}

/// `Π_{B∈π} m_B` for the population.
pub fn population_moment_product(
    dist: &DiscreteDistribution,
    idx: &IndexMultiset,
    pi: &SetPartition,
) -> Result<BigRational> {
    pi.blocks().iter().try_fold(BigRational::one(), |acc, b| {
        Ok(acc * exact_raw_moment(dist, &idx.select(b))?)
    })
}

/// Both sides of the bias identity for products of sample moments:
/// `(E[Π_B m̂_B], N^{−|π|} Σ_{ρ≥π} (N)_{|ρ|} Π_C m_C)`.
pub fn bias_identity_sides(
    dist: &DiscreteDistribution,
    n: usize,
    idx: &IndexMultiset,
    pi: &SetPartition,
    budget: u128,
) -> Result<(BigRational, BigRational)> {
    if pi.ground_size() != idx.order() {
        return Err(Error::GroundSetMismatch {
            left: pi.ground_size(),
            right: idx.order(),
        });
    }
    idx.check(dist.dim())?;
    check_sample_size(n, pi.size())?;
    let lhs = exact_expectation_symmetric(dist, n, budget, |s| sample_moment_product(s, idx, pi))?;
    let mut rhs = BigRational::zero();
    for rho in coarsenings(pi) {
        let falling = BigInt::from(falling_factorial(n, rho.size())?);
        rhs += BigRational::from_integer(falling) * population_moment_product(dist, idx, &rho)?;
    }
    rhs /= BigRational::from_integer(BigInt::from(n).pow(pi.size() as u32));
    Ok((lhs, rhs))
}

/// `true` iff the bias identity holds exactly for this configuration.
pub fn bias_identity_check(
    dist: &DiscreteDistribution,
    n: usize,
    idx: &IndexMultiset,
    pi: &SetPartition,
    budget: u128,
) -> Result<bool> {
    let (lhs, rhs) = bias_identity_sides(dist, n, idx, pi, budget)?;
    Ok(lhs == rhs)
}

/// Draws observation rows for Monte Carlo runs.
pub trait RowSampler {
    fn n_vars(&self) -> usize;
    fn sample_row(&self, rng: &mut ChaCha8Rng, row: &mut [f64]);
}

/// Every row equals the same vector.
#[derive(Debug, Clone)]
pub struct ConstantSampler(pub Vec<f64>);

impl RowSampler for ConstantSampler {
    fn n_vars(&self) -> usize {
        self.0.len()
    }
    fn sample_row(&self, _: &mut ChaCha8Rng, row: &mut [f64]) {
        row.copy_from_slice(&self.0);
    }
}

/// Independent standard normal coordinates.
#[derive(Debug, Clone)]
pub struct StandardNormalSampler {
    pub dims: usize,
}

impl RowSampler for StandardNormalSampler {
    fn n_vars(&self) -> usize {
        self.dims
    }
    fn sample_row(&self, rng: &mut ChaCha8Rng, row: &mut [f64]) {
        let normal = Normal::new(0.0, 1.0).expect("valid parameters");
        for v in row.iter_mut() {
            *v = normal.sample(rng);
        }
    }
}

/// Independent Poisson coordinates.
#[derive(Debug, Clone)]
pub struct PoissonSampler {
    pub lambda: f64,
    pub dims: usize,
}

impl RowSampler for PoissonSampler {
    fn n_vars(&self) -> usize {
        self.dims
    }
    fn sample_row(&self, rng: &mut ChaCha8Rng, row: &mut [f64]) {
        let poisson = Poisson::new(self.lambda).expect("positive rate");
        for v in row.iter_mut() {
            *v = poisson.sample(rng);
        }
    }
}

/// Mean and standard error of the mean over Monte Carlo repetitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Averages the k-statistic over `reps` independent samples of size `n`.
/// Deterministic for a given seed.
pub fn monte_carlo_bias(
    sampler: &dyn RowSampler,
    seed: u64,
    n: usize,
    idx: &IndexMultiset,
    reps: usize,
) -> Result<MonteCarloEstimate> {
    if reps < 2 {
        return Err(Error::InvalidRepetitions(reps));
    }
    idx.check(sampler.n_vars())?;
    check_sample_size(n, idx.order())?;
    let cache = CoefficientCache::new(n);
    let plan = KStatPlan::new(&cache, idx, &KStatOptions::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = sampler.n_vars();
    let mut values = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut buf = vec![0.0; n * width];
        for row in buf.chunks_exact_mut(width) {
            sampler.sample_row(&mut rng, row);
        }
        let data = Dataset::from_row_major(buf, n, width)?;
        values.push(plan.evaluate(&data)?);
    }
    let mut acc = NeumaierSum::default();
    values.iter().for_each(|&v| acc.add(v));
    let mean = acc.total() / reps as f64;
    let mut ss = NeumaierSum::default();
    values.iter().for_each(|&v| ss.add((v - mean) * (v - mean)));
    let var = ss.total() / (reps - 1) as f64;
    Ok(MonteCarloEstimate {
        mean,
        stderr: (var / reps as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[usize]) -> IndexMultiset {
        IndexMultiset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution::univariate("x", &[0, 1], &[(1, 2), (1, 3)]).is_err());
        assert!(DiscreteDistribution::univariate("x", &[0, 0], &[(1, 2), (1, 2)]).is_err());
        assert!(DiscreteDistribution::univariate("x", &[0, 1], &[(1, 1), (0, 1)]).is_err());
        assert!(DiscreteDistribution::univariate("x", &[0], &[(1, 2), (1, 2)]).is_err());
        let joint = skewed_coin().product(&three_point());
        assert_eq!(joint.dim(), 2);
        assert_eq!(joint.support().len(), 6);
    }

    #[test]
    fn raw_moment_examples() {
        let pm = DiscreteDistribution::point_mass(vec![rat(3, 1), rat(-1, 2)]).unwrap();
        assert_eq!(exact_raw_moment(&pm, &idx(&[2])).unwrap(), rat(-1, 2));
        assert_eq!(
            exact_raw_moment(&fair_coin(), &idx(&[1])).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            exact_raw_moment(&fair_coin(), &idx(&[1, 1])).unwrap(),
            rat(1, 2)
        );
        assert!(exact_raw_moment(&fair_coin(), &idx(&[2])).is_err());
    }

    #[test]
    fn cumulant_examples() {
        assert_eq!(
            exact_cumulant(&fair_coin(), &idx(&[1, 1])).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            exact_cumulant(&fair_coin(), &idx(&[1, 1, 1])).unwrap(),
            BigRational::zero()
        );
        let pm = DiscreteDistribution::point_mass(vec![rat(5, 3), rat(2, 1)]).unwrap();
        for i in [vec![1, 1], vec![1, 2], vec![1, 2, 2], vec![1, 1, 2, 2]] {
            assert_eq!(exact_cumulant(&pm, &idx(&i)).unwrap(), BigRational::zero());
        }
        // Bernoulli(1/3): κ2 = p(1−p) = 2/9, κ3 = p(1−p)(1−2p) = 2/27
        assert_eq!(
            exact_cumulant(&skewed_coin(), &idx(&[1, 1])).unwrap(),
            rat(2, 9)
        );
        assert_eq!(
            exact_cumulant(&skewed_coin(), &idx(&[1, 1, 1])).unwrap(),
            rat(2, 27)
        );
    }

    #[test]
    fn expectation_examples() {
        for n in 1..=4 {
            assert_eq!(
                exact_expectation_of_kstat(&three_point(), n, &idx(&[1]), DEFAULT_BUDGET).unwrap(),
                exact_raw_moment(&three_point(), &idx(&[1])).unwrap()
            );
        }
        assert_eq!(
            exact_expectation_of_kstat(&fair_coin(), 2, &idx(&[1, 1]), DEFAULT_BUDGET).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            exact_expectation_of_kstat(&three_point(), 3, &idx(&[1, 1, 1]), DEFAULT_BUDGET)
                .unwrap(),
            exact_cumulant(&three_point(), &idx(&[1, 1, 1])).unwrap()
        );
        assert!(matches!(
            exact_expectation_of_kstat(&three_point(), 13, &idx(&[1]), DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            exact_expectation_of_kstat(&three_point(), 2, &idx(&[1, 1, 1]), DEFAULT_BUDGET),
            Err(Error::InsufficientSampleSize { .. })
        ));
    }

    #[test]
    fn merged_plan_matches_per_partition_sum() {
        let sample = RationalSample::new(vec![
            vec![rat(1, 2), rat(-3, 1)],
            vec![rat(2, 1), rat(1, 7)],
            vec![rat(0, 1), rat(5, 2)],
            vec![rat(-4, 3), rat(1, 1)],
        ])
        .unwrap();
        for i in [vec![1, 2], vec![1, 1, 2], vec![2, 2, 2, 1]] {
            let i = idx(&i);
            let plan = RationalPlan::new(&i, 4).unwrap();
            let moments: Vec<_> = plan
                .moments
                .iter()
                .map(|m| sample.moment(m).unwrap())
                .collect();
            assert_eq!(
                plan.evaluate(&moments),
                rational_k_statistic(&sample, &i).unwrap()
            );
        }
    }

    #[test]
    fn symmetric_enumeration_matches_tuples() {
        let joint = skewed_coin().product(&three_point());
        let i = idx(&[1, 2, 2]);
        for n in 1..=4 {
            let f = |s: &RationalSample| {
                rational_k_statistic(s, &i).or_else(|_| Ok(BigRational::zero()))
            };
            assert_eq!(
                exact_expectation(&joint, n, DEFAULT_BUDGET, f).unwrap(),
                exact_expectation_symmetric(&joint, n, DEFAULT_BUDGET, f).unwrap()
            );
        }
        let total = exact_expectation_symmetric(&three_point(), 4, DEFAULT_BUDGET, |_| {
            Ok(BigRational::one())
        })
        .unwrap();
        assert!(total.is_one());
    }

    #[test]
    fn mhat_examples() {
        let coin = RationalSample::new(vec![vec![rat(0, 1)], vec![rat(1, 1)]]).unwrap();
        let i2 = idx(&[1, 1]);
        assert_eq!(
            mhat_product_estimator(&coin, &i2, &SetPartition::singletons(2).unwrap()).unwrap(),
            BigRational::zero()
        );
        assert_eq!(
            mhat_product_estimator(&coin, &i2, &SetPartition::one_block(2).unwrap()).unwrap(),
            coin.moment(&i2).unwrap()
        );
        let e = exact_expectation(&fair_coin(), 3, DEFAULT_BUDGET, |s| {
            mhat_product_estimator(s, &i2, &SetPartition::singletons(2).unwrap())
        })
        .unwrap();
        assert_eq!(e, rat(1, 4));
    }

    #[test]
    fn bias_identity_examples() {
        let i2 = idx(&[1, 1]);
        assert!(bias_identity_check(
            &fair_coin(),
            2,
            &i2,
            &SetPartition::one_block(2).unwrap(),
            DEFAULT_BUDGET
        )
        .unwrap());
        let (lhs, rhs) = bias_identity_sides(
            &fair_coin(),
            2,
            &i2,
            &SetPartition::singletons(2).unwrap(),
            DEFAULT_BUDGET,
        )
        .unwrap();
        // E[m̂1²] for two fair coins: (0 + 1/4 + 1/4 + 1)/4 = 3/8
        assert_eq!(lhs, rat(3, 8));
        assert_eq!(lhs, rhs);
        let pm = DiscreteDistribution::point_mass(vec![rat(2, 3)]).unwrap();
        for pi in enumerate_set_partitions(3).unwrap() {
            assert!(bias_identity_check(&pm, 3, &idx(&[1, 1, 1]), &pi, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn monte_carlo_constant_and_errors() {
        let constant = ConstantSampler(vec![1.5]);
        let est = monte_carlo_bias(&constant, 1, 10, &idx(&[1, 1, 1]), 50).unwrap();
        assert!(est.mean.abs() < 1e-12);
        assert!(est.stderr < 1e-12);
        assert_eq!(
            monte_carlo_bias(&constant, 1, 10, &idx(&[1]), 1).unwrap_err(),
            Error::InvalidRepetitions(1)
        );
        let a =
            monte_carlo_bias(&StandardNormalSampler { dims: 1 }, 9, 20, &idx(&[1, 1]), 30).unwrap();
        let b =
            monte_carlo_bias(&StandardNormalSampler { dims: 1 }, 9, 20, &idx(&[1, 1]), 30).unwrap();
        assert_eq!(a, b);
    }
}
