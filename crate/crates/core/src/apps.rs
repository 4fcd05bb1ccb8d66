//! Instance builders for two applications: haplotype phasing as a minimum
//! entropy set cover, and coding with side information as a minimum entropy
//! coloring of the confusability graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{coloring_entropy, Coloring};
use crate::entropy::{kahan_sum, SUM_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::setsystem::SetSystem;

/// Default cap on wildcards in a single genotype.
pub const DEFAULT_WILDCARD_LIMIT: usize = 20;
/// Default cap on distinct haplotypes across a panel.
pub const DEFAULT_HAPLOTYPE_CAP: usize = 100_000;

/// Genotypes over `{0, 1, ?}`, all of the same length. Duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenotypePanel {
    genotypes: Vec<String>,
}

fn check_genotype(s: &str) -> Result<()> {
    if let Some((i, c)) = s
        .char_indices()
        .find(|(_, c)| !matches!(c, '0' | '1' | '?'))
    {
        return Err(Error::parse(
            1,
            i + 1,
            format!("genotype character {c:?} is not 0, 1 or ?"),
        ));
    }
    Ok(())
}

impl GenotypePanel {
    pub fn new(genotypes: Vec<String>) -> Result<Self> {
        let Some(first) = genotypes.first() else {
            return Err(Error::Precondition("genotype panel is empty".into()));
        };
        let len = first.len();
        for (line, g) in genotypes.iter().enumerate() {
            check_genotype(g).map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::parse(line + 1, column, message),
                other => other,
            })?;
            if g.len() != len {
                return Err(Error::parse(
                    line + 1,
                    1,
                    format!("genotype has length {}, expected {len}", g.len()),
                ));
            }
        }
        Ok(Self { genotypes })
    }

    pub fn genotypes(&self) -> &[String] {
        &self.genotypes
    }

    pub fn len(&self) -> usize {
        self.genotypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genotypes.is_empty()
    }
}

/// True iff `haplotype` matches `genotype` on every non-`?` position.
pub fn explains(haplotype: &str, genotype: &str) -> bool {
    haplotype.len() == genotype.len()
        && haplotype
            .bytes()
            .zip(genotype.bytes())
            .all(|(h, g)| g == b'?' || g == h)
}

/// All binary strings compatible with `genotype`, in lexicographic order.
pub fn compatible_haplotypes(genotype: &str) -> Result<Vec<String>> {
    compatible_haplotypes_capped(genotype, DEFAULT_WILDCARD_LIMIT)
}

pub fn compatible_haplotypes_capped(genotype: &str, wildcard_limit: usize) -> Result<Vec<String>> {
    check_genotype(genotype)?;
    let slots: Vec<usize> = genotype
        .bytes()
        .enumerate()
        .filter(|&(_, c)| c == b'?')
        .map(|(i, _)| i)
        .collect();
    if slots.len() > wildcard_limit {
        return Err(Error::BudgetExceeded {
            what: "genotype wildcards",
            needed: slots.len() as u128,
            limit: wildcard_limit as u128,
        });
    }
    let base = genotype.as_bytes();
    let out = (0u64..1 << slots.len())
        .map(|mask| {
            let mut h = base.to_vec();
            // first wildcard is the most significant bit, giving lexicographic order
            for (k, &i) in slots.iter().enumerate() {
                let bit = mask >> (slots.len() - 1 - k) & 1;
                h[i] = b'0' + bit as u8;
            }
            String::from_utf8(h).expect("ascii")
        })
        .collect();
    Ok(out)
}

/// Set system whose universe is the panel's genotypes (by index) and whose
/// sets are the distinct compatible haplotypes, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaplotypeInstance {
    pub system: SetSystem,
    pub haplotypes: Vec<String>,
}

pub fn haplotype_instance(panel: &GenotypePanel, cap: usize) -> Result<HaplotypeInstance> {
    let mut members: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (x, g) in panel.genotypes().iter().enumerate() {
        for h in compatible_haplotypes(g)? {
            members.entry(h).or_default().push(x);
            if members.len() > cap {
                return Err(Error::BudgetExceeded {
                    what: "distinct haplotypes (lower the per-genotype wildcard count)",
                    needed: members.len() as u128,
                    limit: cap as u128,
                });
            }
        }
    }
    let (haplotypes, sets): (Vec<String>, Vec<Vec<usize>>) = members.into_iter().unzip();
    Ok(HaplotypeInstance {
        system: SetSystem::new(panel.len(), sets)?,
        haplotypes,
    })
}

/// Joint distribution `P(X = x, Y = y)`, rows indexed by `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    pub probs: Vec<Vec<f64>>,
}

impl JointTable {
    pub fn new(x_labels: Vec<String>, y_labels: Vec<String>, probs: Vec<Vec<f64>>) -> Result<Self> {
        if probs.len() != x_labels.len() || probs.iter().any(|r| r.len() != y_labels.len()) {
            return Err(Error::Precondition(format!(
                "table shape does not match {} x labels and {} y labels",
                x_labels.len(),
                y_labels.len()
            )));
        }
        if probs.iter().flatten().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution(
                "joint probabilities must be finite and nonnegative".into(),
            ));
        }
        let total = kahan_sum(probs.iter().flatten().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "joint probabilities sum to {total}, expected 1"
            )));
        }
        if let Some(x) = probs.iter().position(|r| r.iter().all(|&p| p == 0.0)) {
            return Err(Error::InvalidDistribution(format!(
                "symbol {:?} has zero marginal probability",
                x_labels[x]
            )));
        }
        Ok(Self {
            x_labels,
            y_labels,
            probs,
        })
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.probs
            .iter()
            .map(|r| kahan_sum(r.iter().copied()))
            .collect()
    }
}

/// Confusability graph: `x ~ x'` iff some `y` has `P(x, y) > 0` and `P(x', y) > 0`.
/// Vertices are weighted by the marginal `P(X = x)`.
pub fn confusability_graph(t: &JointTable) -> Result<Graph> {
    let n = t.x_labels.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let confusable = t.probs[a]
                .iter()
                .zip(&t.probs[b])
                .any(|(&pa, &pb)| pa > 0.0 && pb > 0.0);
            if confusable {
                edges.push((a, b));
            }
        }
    }
    let marginal = t.marginal_x();
    let total = kahan_sum(marginal.iter().copied());
    Graph::new(n, edges)?.with_weights(marginal.into_iter().map(|w| w / total).collect())
}

/// Rate in bits per symbol of the code that sends the color of `x`.
pub fn code_rate(g: &Graph, c: &Coloring) -> Result<f64> {
    if g.weights().is_none() {
        return Err(Error::Precondition(
            "code rate needs symbol probabilities as vertex weights".into(),
        ));
    }
    coloring_entropy(g, c)
}
