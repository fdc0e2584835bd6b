use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Block-sequential update scheme: an ordered partition of the vertices.
///
/// Block indices are 1-based and contiguous after normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateScheme {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl UpdateScheme {
    pub fn synchronous(n: usize) -> Self {
        Self::from_normalized(vec![1; n])
    }

    /// One vertex per block, in vertex-id order.
    pub fn sequential(n: usize) -> Self {
        Self::from_normalized((1..=n).collect())
    }

    /// One vertex per block, in the given order.
    pub fn sequential_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut raw = vec![0u64; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if raw[v] != 0 {
                return Err(Error::Precondition(format!("vertex {v} repeated in order")));
            }
            raw[v] = pos as u64 + 1;
        }
        Self::from_raw(&raw)
    }

    /// Order-preserving compaction of arbitrary positive block values.
    pub fn from_raw(raw: &[u64]) -> Result<Self> {
        if let Some(v) = raw.iter().position(|&k| k == 0) {
            return Err(Error::ZeroBlock(v));
        }
        let mut values: Vec<u64> = raw.to_vec();
        values.sort_unstable();
        values.dedup();
        let block_of = raw
            .iter()
            .map(|k| values.binary_search(k).unwrap() + 1)
            .collect();
        Ok(Self::from_normalized(block_of))
    }

    /// Normalizes a sparse `vertex -> value` map; every vertex in `0..n` must be present.
    pub fn normalize(n: usize, raw: &BTreeMap<usize, u64>) -> Result<Self> {
        if let Some((&v, _)) = raw.iter().find(|(&v, _)| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let mut dense = Vec::with_capacity(n);
        for v in 0..n {
            dense.push(*raw.get(&v).ok_or(Error::MissingBlock(v))?);
        }
        Self::from_raw(&dense)
    }

    fn from_normalized(block_of: Vec<usize>) -> Self {
        let num_blocks = block_of.iter().copied().max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); num_blocks];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b - 1].push(v);
        }
        UpdateScheme { block_of, blocks }
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// 1-based block index of `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Blocks in update order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_synchronous(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn is_sequential(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Raw block values (1-based), suitable for re-normalization.
    pub fn raw(&self) -> Vec<u64> {
        self.block_of.iter().map(|&b| b as u64).collect()
    }
}
