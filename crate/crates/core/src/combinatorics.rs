//! Set partitions, integer partitions and the partition lattice.
//!
//! A set partition of `{1..k}` is stored as a restricted-growth string: element
//! `j` (0-based position) carries the label of its block, the first element is
//! labelled `0`, and every label is at most one larger than the largest label
//! before it. That form is canonical, so equality, hashing and ordering all
//! come straight from the label sequence.
//!
//! Positions are 0-based in the Rust API. Everything rendered as text
//! (`Display`, parsing) uses 1-based elements.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest ground set accepted by [`enumerate_set_partitions`] and the other
/// lattice operations. Block membership is tracked in `u32` masks.
pub const MAX_GROUND_SET: usize = 24;

/// A partition of `{1..k}` in restricted-growth form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    assignment: Vec<u8>,
    n_blocks: usize,
}

impl SetPartition {
    /// Builds a partition from a restricted-growth string of 0-based labels.
    pub fn from_assignment(assignment: Vec<u8>) -> Result<Self> {
        check_ground_set(assignment.len())?;
        let mut max_seen: i32 = -1;
        for (j, &label) in assignment.iter().enumerate() {
            if label as i32 > max_seen + 1 {
                return Err(Error::InvalidAssignment(format!(
                    "label {label} at position {} exceeds 1 + previous maximum",
                    j + 1
                )));
            }
            max_seen = max_seen.max(label as i32);
        }
        Ok(Self {
            n_blocks: (max_seen + 1) as usize,
            assignment,
        })
    }

    /// Builds a partition from blocks of 0-based positions. The blocks may be
    /// given in any order; the result is canonical.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        check_ground_set(k)?;
        let mut raw = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidAssignment("empty block".into()));
            }
            for &e in block {
                if e >= k {
                    return Err(Error::InvalidAssignment(format!(
                        "element {} outside ground set of size {k}",
                        e + 1
                    )));
                }
                if raw[e] != usize::MAX {
                    return Err(Error::InvalidAssignment(format!(
                        "element {} appears in two blocks",
                        e + 1
                    )));
                }
                raw[e] = b;
            }
        }
        if let Some(missing) = raw.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidAssignment(format!(
                "element {} is not covered",
                missing + 1
            )));
        }
        Ok(Self::canonicalize(&raw))
    }

    /// Relabels an arbitrary block labelling into restricted-growth form.
    fn canonicalize(raw: &[usize]) -> Self {
        let mut relabel: Vec<(usize, u8)> = Vec::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &r in raw {
            let label = match relabel.iter().find(|(old, _)| *old == r) {
                Some(&(_, new)) => new,
                None => {
                    let new = relabel.len() as u8;
                    relabel.push((r, new));
                    new
                }
            };
            assignment.push(label);
        }
        Self {
            n_blocks: relabel.len(),
            assignment,
        }
    }

    /// The maximum element of the lattice: a single block.
    pub fn one_block(k: usize) -> Result<Self> {
        check_ground_set(k)?;
        Ok(Self {
            assignment: vec![0; k],
            n_blocks: 1,
        })
    }

    /// The minimum element of the lattice: `k` singletons.
    pub fn singletons(k: usize) -> Result<Self> {
        check_ground_set(k)?;
        Ok(Self {
            assignment: (0..k as u8).collect(),
            n_blocks: k,
        })
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.assignment.len()
    }

    /// Number of blocks, `|π|`.
    pub fn size(&self) -> usize {
        self.n_blocks
    }

    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    /// Blocks as sorted lists of 0-based positions, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.n_blocks];
        for (j, &label) in self.assignment.iter().enumerate() {
            blocks[label as usize].push(j);
        }
        blocks
    }

    /// Blocks as bit masks over positions.
    pub fn block_masks(&self) -> Vec<u32> {
        block_masks_of(&self.assignment, self.n_blocks)
    }

    pub fn profile(&self) -> BlockSizeProfile {
        profile_of(&self.assignment, self.n_blocks)
    }
}

fn check_ground_set(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if k > MAX_GROUND_SET {
        return Err(Error::OrderAboveCap {
            order: k,
            cap: MAX_GROUND_SET,
        });
    }
    Ok(())
}

pub(crate) fn block_masks_of(assignment: &[u8], n_blocks: usize) -> Vec<u32> {
    let mut masks = vec![0u32; n_blocks];
    for (j, &label) in assignment.iter().enumerate() {
        masks[label as usize] |= 1 << j;
    }
    masks
}

pub(crate) fn profile_of(assignment: &[u8], n_blocks: usize) -> BlockSizeProfile {
    let mut sizes = vec![0usize; n_blocks];
    for &label in assignment {
        sizes[label as usize] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    BlockSizeProfile { sizes }
}

impl fmt::Display for SetPartition {
    /// Renders as `{{1},{2,3}}` with 1-based elements.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, e) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", e + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `{{1},{2,4},{3}}` (1-based). The ground set is `{1..max}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAssignment(format!("cannot parse partition {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut blocks = Vec::new();
        for chunk in inner.split('}') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('{').ok_or_else(bad)?;
            let block = body
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&e| e >= 1)
                        .map(|e| e - 1)
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            blocks.push(block);
        }
        let k = blocks
            .iter()
            .flatten()
            .map(|&e| e + 1)
            .max()
            .ok_or_else(bad)?;
        Self::from_blocks(k, &blocks)
    }
}

/// Integer partition of `k`: block sizes in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSizeProfile {
    sizes: Vec<usize>,
}

impl BlockSizeProfile {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidAssignment(format!(
                "invalid block sizes {sizes:?}"
            )));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Sum of the sizes.
    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

impl fmt::Display for BlockSizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Streaming enumeration of `Π_k` in lexicographic restricted-growth order.
///
/// [`SetPartitions::advance`] steps in place without allocating; the
/// `Iterator` impl clones each state into a [`SetPartition`].
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<u8>,
    prefix_max: Vec<u8>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    fn new(k: usize) -> Self {
        Self {
            labels: vec![0; k],
            prefix_max: vec![0; k],
            started: false,
            done: false,
        }
    }

    /// Moves to the next partition. Returns `false` once the stream is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let k = self.labels.len();
        for j in (1..k).rev() {
            if self.labels[j] <= self.prefix_max[j - 1] {
                self.labels[j] += 1;
                let top = self.prefix_max[j - 1].max(self.labels[j]);
                self.prefix_max[j] = top;
                for l in j + 1..k {
                    self.labels[l] = 0;
                    self.prefix_max[l] = top;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    /// Labels of the current partition. Only meaningful after `advance` returned `true`.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Block count of the current partition.
    pub fn n_blocks(&self) -> usize {
        *self.prefix_max.last().unwrap_or(&0) as usize + 1
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.advance() {
            Some(SetPartition {
                assignment: self.labels.clone(),
                n_blocks: self.n_blocks(),
            })
        } else {
            None
        }
    }
}

/// Streams every partition of `{1..k}` exactly once, `Bell(k)` in total.
///
/// `k` must lie in `1..=MAX_GROUND_SET`.
pub fn enumerate_set_partitions(k: usize) -> Result<SetPartitions> {
    check_ground_set(k)?;
    Ok(SetPartitions::new(k))
}

/// Stirling number of the second kind, from the triangle recurrence
/// `S(n,k) = k·S(n−1,k) + S(n−1,k−1)`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::StirlingOutOfRange { n, k });
    }
    Ok(stirling2_row(n).swap_remove(k))
}

/// Row `n` of the Stirling triangle, indexed `0..=n`.
fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in 1..=m {
            let mut v = BigUint::from(j) * row.get(j).cloned().unwrap_or_default();
            v += &row[j - 1];
            next[j] = v;
        }
        row = next;
    }
    row
}

/// Stirling number of the second kind from the explicit alternating sum
/// `(1/k!) Σ_{i<k} (−1)^i C(k,i) (k−i)^n`, evaluated in big integers.
pub fn stirling2_alternating(n: usize, k: usize) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::StirlingOutOfRange { n, k });
    }
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    for i in 0..k {
        let term = &binom * BigInt::from(k - i).pow(n as u32);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    let quotient = total / BigInt::from(factorial(k));
    Ok(quotient
        .to_biguint()
        .expect("Stirling numbers are non-negative"))
}

/// Bell number: the number of partitions of an `n`-set.
pub fn bell(n: usize) -> BigUint {
    stirling2_row(n).into_iter().sum()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Falling factorial `(n)_k = n(n−1)···(n−k+1)`; `(n)_0 = 1`.
pub fn falling_factorial(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::FallingFactorialRange { n, k });
    }
    Ok((n - k + 1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i)))
}

/// All integer partitions of `k`, each as a non-increasing profile.
/// Ordered reverse-lexicographically, starting with `[k]`.
pub fn integer_partitions(k: usize) -> Result<Vec<BlockSizeProfile>> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(k, k, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(
    remaining: usize,
    largest: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<BlockSizeProfile>,
) {
    if remaining == 0 {
        out.push(BlockSizeProfile {
            sizes: current.clone(),
        });
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// `true` iff every block of `pi` lies inside a block of `rho` (`π ≤ ρ`).
pub fn refines(pi: &SetPartition, rho: &SetPartition) -> Result<bool> {
    check_same_ground(pi, rho)?;
    // π ≤ ρ iff the map from π-labels to ρ-labels is well defined.
    let mut image = vec![u8::MAX; pi.n_blocks];
    for (&p, &r) in pi.assignment.iter().zip(&rho.assignment) {
        let slot = &mut image[p as usize];
        if *slot == u8::MAX {
            *slot = r;
        } else if *slot != r {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_same_ground(pi: &SetPartition, rho: &SetPartition) -> Result<()> {
    if pi.ground_size() != rho.ground_size() {
        return Err(Error::GroundSetMismatch {
            left: pi.ground_size(),
            right: rho.ground_size(),
        });
    }
    Ok(())
}

/// Every `ρ ≥ π`, in canonical order. Built by merging blocks of `pi`
/// according to each partition of its block set, so the count is `Bell(|π|)`.
pub fn coarsenings(pi: &SetPartition) -> Vec<SetPartition> {
    let mut out: Vec<SetPartition> = SetPartitions::new(pi.n_blocks)
        .map(|merge| {
            let raw: Vec<usize> = pi
                .assignment
                .iter()
                .map(|&label| merge.assignment[label as usize] as usize)
                .collect();
            SetPartition::canonicalize(&raw)
        })
        .collect();
    out.sort();
    out
}

/// For `π ≤ ρ`: how each block of `ρ` is split by `π`.
///
/// `sub_partitions[c]` partitions the `c`-th block of `ρ` (blocks ordered by
/// smallest element); its positions are local to that block, in ascending
/// order of the original elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientFamily {
    coarse_blocks: Vec<Vec<usize>>,
    sub_partitions: Vec<SetPartition>,
}

impl QuotientFamily {
    pub fn sub_partitions(&self) -> &[SetPartition] {
        &self.sub_partitions
    }

    /// The blocks of `ρ` the sub-partitions apply to (0-based positions).
    pub fn coarse_blocks(&self) -> &[Vec<usize>] {
        &self.coarse_blocks
    }

    /// Applies the sub-partitions to the blocks of `ρ`, recovering `π`.
    pub fn reconstruct(&self) -> SetPartition {
        let k: usize = self.coarse_blocks.iter().map(Vec::len).sum();
        let mut blocks = Vec::new();
        for (block, sigma) in self.coarse_blocks.iter().zip(&self.sub_partitions) {
            for local in sigma.blocks() {
                blocks.push(local.iter().map(|&j| block[j]).collect());
            }
        }
        SetPartition::from_blocks(k, &blocks).expect("quotient family covers the ground set")
    }
}

pub fn quotient_family(pi: &SetPartition, rho: &SetPartition) -> Result<QuotientFamily> {
    if !refines(pi, rho)? {
        return Err(Error::NotARefinement);
    }
    let coarse_blocks = rho.blocks();
    let sub_partitions = coarse_blocks
        .iter()
        .map(|block| {
            let raw: Vec<usize> = block.iter().map(|&e| pi.assignment[e] as usize).collect();
            SetPartition::canonicalize(&raw)
        })
        .collect();
    Ok(QuotientFamily {
        coarse_blocks,
        sub_partitions,
    })
}

/// `(−1)^{|ρ|−1} (|ρ|−1)!`: the Möbius weight between `ρ` and the one-block partition.
pub fn mobius_weight_refinement(rho: &SetPartition) -> BigInt {
    signed_factorial(rho.size() - 1, rho.size() - 1)
}

/// `(−1)^{|π|−|ρ|} Π_{σ∈Σ(π,ρ)} (|σ|−1)!` for `π ≤ ρ`.
pub fn mobius_weight_coarsening(pi: &SetPartition, rho: &SetPartition) -> Result<BigInt> {
    let family = quotient_family(pi, rho)?;
    let magnitude: BigUint = family
        .sub_partitions
        .iter()
        .map(|sigma| factorial(sigma.size() - 1))
        .product();
    let value = BigInt::from(magnitude);
    Ok(if (pi.size() - rho.size()).is_multiple_of(2) {
        value
    } else {
        -value
    })
}

fn signed_factorial(n: usize, sign_exponent: usize) -> BigInt {
    let value = BigInt::from(factorial(n));
    if sign_exponent.is_multiple_of(2) {
        value
    } else {
        -value
    }
}
