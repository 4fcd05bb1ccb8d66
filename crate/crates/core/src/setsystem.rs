use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ground set `{0, .., universe_size}` and a collection of subsets covering it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetSystemRepr", into = "SetSystemRepr")]
pub struct SetSystem {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
    /// `containing[x]` lists the indices of sets holding `x`, ascending.
    containing: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SetSystemRepr {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemRepr> for SetSystem {
    type Error = Error;
    fn try_from(r: SetSystemRepr) -> Result<Self> {
        SetSystem::new(r.universe_size, r.sets)
    }
}

impl From<SetSystem> for SetSystemRepr {
    fn from(s: SetSystem) -> Self {
        SetSystemRepr {
            universe_size: s.universe_size,
            sets: s.sets,
        }
    }
}

impl SetSystem {
    /// Members of each set are sorted; duplicates, out-of-range ids and
    /// uncovered elements are rejected.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut containing = vec![Vec::new(); universe_size];
        let mut sorted_sets = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidSetSystem(format!(
                    "set {i} lists element {} twice",
                    w[0]
                )));
            }
            for &x in &set {
                if x >= universe_size {
                    return Err(Error::InvalidSetSystem(format!(
                        "set {i} has element {x} outside [0, {universe_size})"
                    )));
                }
                containing[x].push(i);
            }
            sorted_sets.push(set);
        }
        if let Some(x) = containing.iter().position(Vec::is_empty) {
            return Err(Error::InvalidSetSystem(format!(
                "element {x} is not covered by any set"
            )));
        }
        Ok(Self {
            universe_size,
            sets: sorted_sets,
            containing,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn contains(&self, set: usize, x: usize) -> bool {
        self.sets[set].binary_search(&x).is_ok()
    }

    pub fn sets_containing(&self, x: usize) -> &[usize] {
        &self.containing[x]
    }

    /// Number of feasible assignments, saturating at `u128::MAX`.
    pub fn assignment_space(&self) -> u128 {
        self.containing
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX)
    }
}
