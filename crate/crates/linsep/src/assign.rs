//! Dataset-to-worker assignments: the cyclic window assignment and the
//! grouped repetition assignment, plus per-worker complements.
//!
//! Dataset and worker indices are 1-based everywhere, matching the
//! `Mod(b, a) in {1..a}` convention used by the closed-form windows; the JSON
//! dump keeps the 1-based indices.

use crate::model::{ParamError, SystemParams};
use serde::{Deserialize, Serialize};

/// `Mod(b, a)` with representatives in `{1..a}`.
pub fn mod1(b: i64, a: usize) -> usize {
    let a = a as i64;
    ((b - 1).rem_euclid(a) + 1) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignmentKind {
    Cyclic,
    Repetition,
}

/// Per-worker dataset index sets, with the worker-group partition in the
/// repetition case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub kind: AssignmentKind,
    /// `zsets[n-1]` is the sorted set of dataset indices held by worker n.
    pub zsets: Vec<Vec<usize>>,
    /// Repetition only: `groups[i]` lists the workers of group i+1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<usize>>>,
}

impl Assignment {
    /// Datasets held by worker `n` (1-based).
    pub fn held(&self, n: usize) -> &[usize] {
        &self.zsets[n - 1]
    }

    /// Complement of `Z_n` in `[1..K]`.
    pub fn missing(&self, k: usize, n: usize) -> Vec<usize> {
        let held = self.held(n);
        (1..=k).filter(|i| !held.contains(i)).collect()
    }
}

/// Cyclic assignment: worker n holds the window of `N - N_r + m` consecutive
/// residues starting at n, replicated across all K/N cycles.
pub fn cyclic_assignment(p: &SystemParams) -> Result<Assignment, ParamError> {
    p.validate()?;
    let window = p.replication();
    let cycles = p.cycle();
    let zsets = (1..=p.n)
        .map(|n| {
            let mut z: Vec<usize> = (0..window)
                .flat_map(|t| {
                    let residue = mod1(n as i64 + t as i64, p.n);
                    (0..cycles).map(move |c| residue + c * p.n)
                })
                .collect();
            z.sort_unstable();
            z
        })
        .collect();
    Ok(Assignment { kind: AssignmentKind::Cyclic, zsets, groups: None })
}

/// Repetition assignment: `N / (N - N_r + m)` dataset-disjoint groups, all
/// workers of a group holding the same `M` datasets.
pub fn repetition_assignment(p: &SystemParams) -> Result<Assignment, ParamError> {
    p.validate()?;
    let group_size = p.replication();
    if p.n % group_size != 0 {
        return Err(ParamError::RepDivisibility { group: group_size, n: p.n });
    }
    let cycles = p.cycle();
    let group_count = p.n / group_size;
    let mut zsets = vec![Vec::new(); p.n];
    let mut groups = Vec::with_capacity(group_count);
    for g in 0..group_count {
        let mut shared: Vec<usize> = (1..=group_size)
            .flat_map(|j| {
                let residue = mod1((j + group_size * g) as i64, p.n);
                (0..cycles).map(move |c| residue + c * p.n)
            })
            .collect();
        shared.sort_unstable();
        let members: Vec<usize> = (g * group_size + 1..=(g + 1) * group_size).collect();
        for &w in &members {
            zsets[w - 1] = shared.clone();
        }
        groups.push(members);
    }
    Ok(Assignment { kind: AssignmentKind::Repetition, zsets, groups: Some(groups) })
}
