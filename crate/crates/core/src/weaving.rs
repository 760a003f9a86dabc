//! Weaving of finite frame families by exhaustive partition enumeration, and
//! the adversarial two-family scenario built from compact-tight frames.
//!
//! Partition `p ∈ [0, mᴺ)` assigns vector `j` to family digit `j` of `p` in
//! base `m`, most significant first, so numeric order on `p` is lexicographic
//! order on assignments. The reduction keeps the smallest `λ_min` with the
//! lowest index as tie-break, which makes reports independent of scheduling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::frames::FrameSystem;
use crate::linalg::{self, ComplexMatrix};
use crate::module::{standard_basis, ModuleOperator, ModuleShape};
use crate::profile::{ProfileKind, ScalarProfile};

/// Default cap on `mᴺ`.
pub const DEFAULT_MAX_PARTITIONS: u64 = 1 << 20;

/// Largest supported number of families.
pub const MAX_FAMILIES: usize = 4;

/// Vector `j` is taken from family `assignment[j]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
}

impl Partition {
    pub fn new(assignment: Vec<usize>, families: usize) -> Result<Self> {
        if let Some((position, &value)) =
            assignment.iter().enumerate().find(|(_, &v)| v >= families)
        {
            return Err(Error::InvalidPartition {
                position,
                value,
                families,
            });
        }
        Ok(Self { assignment })
    }

    /// Decodes partition number `index` for `families` families over `len` vectors.
    pub fn from_index(mut index: u64, families: usize, len: usize) -> Self {
        let m = families as u64;
        let mut assignment = vec![0; len];
        for slot in assignment.iter_mut().rev() {
            *slot = (index % m) as usize;
            index /= m;
        }
        Self { assignment }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Index sets `σ_i = {j : assignment[j] = i}`.
    pub fn blocks(&self, families: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); families];
        for (j, &i) in self.assignment.iter().enumerate() {
            out[i].push(j);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|a| (a + 1).to_string())
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeavingReport {
    pub universal_lower: f64,
    pub universal_upper: f64,
    pub worst_partition: Partition,
    pub is_woven: bool,
    pub partitions_checked: u64,
}

fn check_families(families: &[FrameSystem]) -> Result<(ModuleShape, usize)> {
    if families.is_empty() || families.len() > MAX_FAMILIES {
        return Err(Error::FamilyCount {
            got: families.len(),
            max: MAX_FAMILIES,
        });
    }
    let shape = families[0].shape();
    let len = families[0].len();
    for fam in &families[1..] {
        if fam.shape() != shape {
            return Err(Error::ShapeMismatch {
                left: shape,
                right: fam.shape(),
            });
        }
        if fam.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: fam.len(),
            });
        }
    }
    Ok((shape, len))
}

/// `rep(x_ij)*·rep(x_ij)` for every family `i` and index `j`.
fn projections(families: &[FrameSystem]) -> Vec<Vec<ComplexMatrix>> {
    families
        .iter()
        .map(|f| f.vectors().iter().map(|v| v.rep().gram()).collect())
        .collect()
}

fn assemble(grams: &[Vec<ComplexMatrix>], assignment: &[usize], size: usize) -> ComplexMatrix {
    assignment
        .iter()
        .enumerate()
        .fold(ComplexMatrix::zeros(size, size), |acc, (j, &i)| {
            &acc + &grams[i][j]
        })
}

/// Frame operator of the woven family `{x_{assignment[j], j}}_j`.
pub fn weaving_operator(families: &[FrameSystem], part: &Partition) -> Result<ModuleOperator> {
    let (shape, len) = check_families(families)?;
    if part.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: part.len(),
        });
    }
    let part = Partition::new(part.assignment.clone(), families.len())?;
    let grams = projections(families);
    ModuleOperator::new(shape, assemble(&grams, &part.assignment, shape.rep_cols()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Extremes {
    min: f64,
    argmin: u64,
    max: f64,
}

impl Extremes {
    const EMPTY: Self = Self {
        min: f64::INFINITY,
        argmin: u64::MAX,
        max: f64::NEG_INFINITY,
    };

    fn merge(self, other: Self) -> Self {
        let (min, argmin) =
            if other.min < self.min || (other.min == self.min && other.argmin < self.argmin) {
                (other.min, other.argmin)
            } else {
                (self.min, self.argmin)
            };
        Self {
            min,
            argmin,
            max: self.max.max(other.max),
        }
    }
}

/// Universal bounds over all `mᴺ` partitions, by exhaustion.
pub fn universal_bounds(
    families: &[FrameSystem],
    tol: f64,
    max_partitions: u64,
    exec: Execution,
) -> Result<WeavingReport> {
    let (shape, len) = check_families(families)?;
    let m = families.len();
    let count = (m as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if count > max_partitions as u128 {
        return Err(Error::TooManyPartitions {
            count,
            cap: max_partitions,
        });
    }
    let count = count as u64;
    let grams = projections(families);
    let size = shape.rep_cols();

    let ext = exec.map_reduce(
        0..count,
        Extremes::EMPTY,
        |p| {
            let part = Partition::from_index(p, m, len);
            let spectrum = linalg::hermitian_spectrum(&assemble(&grams, &part.assignment, size));
            Extremes {
                min: spectrum[0],
                argmin: p,
                max: spectrum[spectrum.len() - 1],
            }
        },
        Extremes::merge,
    );

    let universal_lower = ext.min.max(0.0);
    Ok(WeavingReport {
        universal_lower,
        universal_upper: ext.max.max(universal_lower),
        worst_partition: Partition::from_index(ext.argmin, m, len),
        is_woven: universal_lower > tol,
        partitions_checked: count,
    })
}

/// Two `(1, K)`-compact-tight frames whose halves are orthonormal bases on
/// complementary index sets, and the partition that removes both bases.
///
/// With `N` vectors on a module of rank `N/2`, `σ` is the odd positions
/// `k = 1, 3, …` (0-based indices `0, 2, …`). For `F`, `k ∈ σ` gives
/// `e_{(k+1)/2}` and `k ∈ σᶜ` gives `√l¹_k · e_{k/2}`; `G` swaps the roles of
/// `σ` and `σᶜ` and uses `l²`. Then `S_F = I + K₁`, `S_G = I + K₂`, and the
/// weaving `{f_k}_{σᶜ} ∪ {f̃_k}_σ` has frame operator exactly `K₁ + K₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeavingScenario {
    pub f: FrameSystem,
    pub g: FrameSystem,
    /// 0-based indices of `σ`.
    pub sigma: Vec<usize>,
    pub adversarial: Partition,
    pub k1: ModuleOperator,
    pub k2: ModuleOperator,
    pub profile1: ScalarProfile,
    pub profile2: ScalarProfile,
}

impl WeavingScenario {
    pub fn families(&self) -> [FrameSystem; 2] {
        [self.f.clone(), self.g.clone()]
    }

    pub fn adversarial_operator(&self) -> ModuleOperator {
        weaving_operator(&self.families(), &self.adversarial).expect("consistent scenario")
    }

    /// `K₁ + K₂`.
    pub fn k_sum(&self) -> ModuleOperator {
        self.k1.add(&self.k2).expect("same shape")
    }

    /// `2·(l¹_{N−1} + l²_{N−1})`, an upper envelope for the adversarial `λ_min`.
    pub fn decay_envelope(&self) -> f64 {
        let n = self.f.len();
        2.0 * (self.profile1.eval(n - 1) + self.profile2.eval(n - 1))
    }
}

fn check_vanishing(p: &ScalarProfile, which: &str) -> Result<()> {
    if p.limit() != 0.0 || p.amplitude() <= 0.0 || p.kind() == ProfileKind::Constant {
        return Err(Error::NonzeroLimit(format!("{which} = {p}")));
    }
    Ok(())
}

pub fn decaying_weave_scenario(
    len: usize,
    profile1: &ScalarProfile,
    profile2: &ScalarProfile,
    d: usize,
) -> Result<WeavingScenario> {
    if len == 0 || len % 2 == 1 {
        return Err(Error::OddN(len));
    }
    check_vanishing(profile1, "profile1")?;
    check_vanishing(profile2, "profile2")?;
    let shape = ModuleShape::new(d, len / 2)?;
    let basis = standard_basis(shape);

    let mut f = Vec::with_capacity(len);
    let mut g = Vec::with_capacity(len);
    let mut k1 = vec![0.0; shape.n];
    let mut k2 = vec![0.0; shape.n];
    let mut sigma = Vec::new();
    let mut assignment = Vec::with_capacity(len);
    for idx in 0..len {
        let k = idx + 1;
        let block = idx / 2;
        if k % 2 == 1 {
            sigma.push(idx);
            f.push(basis[block].clone());
            g.push(basis[block].scale(profile2.eval(k).sqrt()));
            k2[block] = profile2.eval(k);
            assignment.push(1);
        } else {
            f.push(basis[block].scale(profile1.eval(k).sqrt()));
            g.push(basis[block].clone());
            k1[block] = profile1.eval(k);
            assignment.push(0);
        }
    }

    Ok(WeavingScenario {
        f: FrameSystem::new(shape, f)?,
        g: FrameSystem::new(shape, g)?,
        sigma,
        adversarial: Partition::new(assignment, 2)?,
        k1: ModuleOperator::block_diagonal(shape, &k1)?,
        k2: ModuleOperator::block_diagonal(shape, &k2)?,
        profile1: *profile1,
        profile2: *profile2,
    })
}
