//! Partition-wise linear entropy and its change under a boost.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boost::BoostMap;
use crate::error::{Error, Result};
use crate::kinematics::Angle;
use crate::states::{compose, CompositeState, MomentumState, SpinState};
use crate::tensor::reduced_density;

/// Tolerance below which an entanglement change counts as zero.
pub const CONSERVATION_TOL: f64 = 1e-10;

/// One factor of `[A_p, A_s, B_p, B_s]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    AliceMomentum,
    AliceSpin,
    BobMomentum,
    BobSpin,
}

impl Subsystem {
    pub const ALL: [Subsystem; 4] = [
        Subsystem::AliceMomentum,
        Subsystem::AliceSpin,
        Subsystem::BobMomentum,
        Subsystem::BobSpin,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Subsystem::AliceMomentum => "Ap",
            Subsystem::AliceSpin => "As",
            Subsystem::BobMomentum => "Bp",
            Subsystem::BobSpin => "Bs",
        }
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_lowercase();
        match key.as_str() {
            "ap" | "0" => Ok(Subsystem::AliceMomentum),
            "as" | "1" => Ok(Subsystem::AliceSpin),
            "bp" | "2" => Ok(Subsystem::BobMomentum),
            "bs" | "3" => Ok(Subsystem::BobSpin),
            _ => Err(Error::InvalidPartition(format!("unknown subsystem {s:?}"))),
        }
    }
}

/// Disjoint cover of the four subsystems by at least two blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::InvalidPartition("need at least two blocks".into()));
        }
        let mut seen = [false; 4];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in block {
                if i >= 4 {
                    return Err(Error::IndexOutOfRange { index: i, count: 4 });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("subsystem {i} appears twice")));
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::InvalidPartition("blocks do not cover all four subsystems".into()));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `Ap+As` style names, one per block.
    pub fn block_labels(&self) -> Vec<String> {
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| Subsystem::from_index(i).unwrap().short_name())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect()
    }

    /// Largest attainable total linear entropy, `Σ (1 - 1/d_block)`.
    pub fn entropy_bound(&self, local_dims: &[usize]) -> f64 {
        self.blocks
            .iter()
            .map(|b| 1.0 - 1.0 / b.iter().map(|&i| local_dims[i]).product::<usize>() as f64)
            .sum()
    }
}

/// The partitions studied for the two-particle system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionSelector {
    /// `{A_p, A_s} | {B_p, B_s}`.
    AliceVsBob,
    /// `{A_p, B_p} | {A_s, B_s}`.
    MomentumVsSpin,
    /// `{i} | rest` for one subsystem, or with `None` every subsystem on its
    /// own, which sums the four single-subsystem entropies.
    OneVsThree(Option<Subsystem>),
}

impl PartitionSelector {
    pub fn partition(self) -> Partition {
        let blocks = match self {
            PartitionSelector::AliceVsBob => vec![vec![0, 1], vec![2, 3]],
            PartitionSelector::MomentumVsSpin => vec![vec![0, 2], vec![1, 3]],
            PartitionSelector::OneVsThree(Some(s)) => {
                let i = s.index();
                vec![vec![i], (0..4).filter(|&k| k != i).collect()]
            }
            PartitionSelector::OneVsThree(None) => (0..4).map(|i| vec![i]).collect(),
        };
        Partition::new(blocks).expect("fixed partitions are valid")
    }
}

impl fmt::Display for PartitionSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionSelector::AliceVsBob => f.write_str("AB"),
            PartitionSelector::MomentumVsSpin => f.write_str("ps"),
            PartitionSelector::OneVsThree(None) => f.write_str("1v3"),
            PartitionSelector::OneVsThree(Some(s)) => write!(f, "1v3:{}", s.short_name()),
        }
    }
}

impl FromStr for PartitionSelector {
    type Err = Error;

    /// `AB`, `ps`, `1v3`, or `1v3:<subsystem>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "ab" | "a_vs_b" => return Ok(PartitionSelector::AliceVsBob),
            "ps" | "p_vs_s" => return Ok(PartitionSelector::MomentumVsSpin),
            "1v3" | "one_vs_three" => return Ok(PartitionSelector::OneVsThree(None)),
            _ => {}
        }
        match lower.split_once(':') {
            Some(("1v3" | "one_vs_three", sub)) => Ok(PartitionSelector::OneVsThree(Some(sub.parse()?))),
            _ => Err(Error::InvalidPartition(format!("unknown partition {s:?}"))),
        }
    }
}

impl Serialize for PartitionSelector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartitionSelector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn named_partition(name: &str) -> Result<Partition> {
    Ok(name.parse::<PartitionSelector>()?.partition())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// `1 - Tr ρ_block²` for each block.
    pub per_block: Vec<f64>,
    pub total: f64,
}

/// Linear entropy of a pure composite state, summed over the blocks of `part`.
pub fn linear_entropy(psi: &CompositeState, part: &Partition) -> EntropyReport {
    let shape = psi.shape();
    let per_block: Vec<f64> = part
        .blocks()
        .iter()
        .map(|block| {
            let rho = reduced_density(psi.vector(), &shape, block).expect("partition indices are in range");
            1.0 - rho.purity()
        })
        .collect();
    let total = per_block.iter().sum();
    EntropyReport { per_block, total }
}

/// Entropies before and after a boost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementChange {
    pub before: EntropyReport,
    pub after: EntropyReport,
}

impl EntanglementChange {
    pub fn total(&self) -> f64 {
        self.after.total - self.before.total
    }

    pub fn per_block(&self) -> Vec<f64> {
        self.after
            .per_block
            .iter()
            .zip(&self.before.per_block)
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// Entanglement change of `|p⟩ ⊗ |s⟩` under a prebuilt boost map.
pub fn entanglement_change(map: &BoostMap, p: &MomentumState, s: &SpinState, part: &Partition) -> EntanglementChange {
    let psi = compose(p, s);
    let boosted = map.apply(&psi);
    EntanglementChange {
        before: linear_entropy(&psi, part),
        after: linear_entropy(&boosted, part),
    }
}

/// `ΔE = E(U|ψ⟩) - E(|ψ⟩)` for `|ψ⟩ = |p⟩ ⊗ |s⟩`.
pub fn delta_e(p: &MomentumState, s: &SpinState, omega: Angle, part: &Partition) -> f64 {
    entanglement_change(&BoostMap::new(s.spin(), omega), p, s, part).total()
}

/// Whether the Alice-vs-Bob entanglement is unchanged by the boost.
pub fn a_vs_b_conserved(p: &MomentumState, s: &SpinState, omega: Angle) -> bool {
    delta_e(p, s, omega, &PartitionSelector::AliceVsBob.partition()).abs() < CONSERVATION_TOL
}
