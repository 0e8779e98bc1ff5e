//! Classes induced by a partial test cover.
//!
//! A [`Partition`] is always kept in canonical form: every block sorted and
//! blocks ordered by their smallest vertex, so two partitions are equal iff
//! they are structurally equal.

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl Partition {
    /// The single block `{0, …, n−1}`.
    pub fn whole(n: usize) -> Self {
        let blocks = if n == 0 {
            Vec::new()
        } else {
            vec![(0..n).collect()]
        };
        Partition { blocks, n }
    }

    /// Builds a partition of `0..n` from arbitrary blocks and canonicalizes it.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument(
                    "partition has an empty block".into(),
                ));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n || seen[v] {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} repeated or outside 0..{n}"
                    )));
                }
                seen[v] = true;
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks, n })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Ambient vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// True when every class is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Splits each block `B` into the nonempty members of `{B ∩ test, B ∖ test}`.
pub fn refine(partition: &Partition, test: &[usize]) -> Result<Partition> {
    let n = partition.n();
    let mut member = vec![false; n];
    for &v in test {
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "test vertex {v} outside 0..{n}"
            )));
        }
        member[v] = true;
    }
    Ok(refine_unchecked(partition, &member))
}

fn refine_unchecked(partition: &Partition, member: &[bool]) -> Partition {
    let mut blocks = Vec::with_capacity(partition.len() * 2);
    for block in partition.blocks() {
        let (inside, outside): (Vec<usize>, Vec<usize>) = block.iter().partition(|&&v| member[v]);
        if !inside.is_empty() {
            blocks.push(inside);
        }
        if !outside.is_empty() {
            blocks.push(outside);
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    Partition {
        blocks,
        n: partition.n(),
    }
}

fn check_subset(instance: &Instance, subset: &[usize]) -> Result<()> {
    let mut used = vec![false; instance.m()];
    for &t in subset {
        if t >= instance.m() {
            return Err(Error::InvalidArgument(format!(
                "test index {t} out of range (m = {})",
                instance.m()
            )));
        }
        if used[t] {
            return Err(Error::InvalidArgument(format!("test index {t} repeated")));
        }
        used[t] = true;
    }
    Ok(())
}

/// Classes induced by the tests selected by `subset`.
pub fn induced_classes(instance: &Instance, subset: &[usize]) -> Result<Partition> {
    check_subset(instance, subset)?;
    let mut member = vec![false; instance.n()];
    let mut partition = Partition::whole(instance.n());
    for &t in subset {
        let test = instance.test(t);
        for &v in test {
            member[v] = true;
        }
        partition = refine_unchecked(&partition, &member);
        for &v in test {
            member[v] = false;
        }
    }
    Ok(partition)
}

/// True iff the selected tests separate every pair of distinct vertices.
pub fn is_test_cover(instance: &Instance, subset: &[usize]) -> Result<bool> {
    Ok(induced_classes(instance, subset)?.is_discrete())
}
