//! Extraction of diagonal blocks from a tensor that is block-diagonal in its
//! leading modes.

use super::{strides_of, DenseTensor};
use crate::error::{Error, Result};

impl DenseTensor {
    /// Splits the leading `partitions.len()` modes into consecutive segments
    /// and extracts the "diagonal" blocks — sub-tensors whose segment index
    /// agrees across all partitioned modes. Trailing modes are carried along
    /// unsplit.
    ///
    /// `partitions[n]` lists the segment lengths of mode `n`; all modes must
    /// be partitioned into the same number `R` of segments, and each mode's
    /// segment lengths must sum to its dimension. Returns the `R` blocks
    /// (block `r` has shape `partitions[0][r] × … × partitions[N̂-1][r] ×
    /// trailing dims`) together with the Frobenius mass of everything
    /// *outside* the diagonal blocks — the residual a block-diagonalization
    /// left behind.
    pub fn extract_diag_blocks(
        &self,
        partitions: &[Vec<usize>],
    ) -> Result<(Vec<DenseTensor>, f64)> {
        let n_hat = partitions.len();
        if n_hat == 0 || n_hat > self.order() {
            return Err(Error::InvalidPartition(format!(
                "{} partitioned modes for an order-{} tensor",
                n_hat,
                self.order()
            )));
        }
        let num_blocks = partitions[0].len();
        if num_blocks == 0 {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        for (n, parts) in partitions.iter().enumerate() {
            if parts.len() != num_blocks {
                return Err(Error::InvalidPartition(format!(
                    "mode 0 has {} segments but mode {} has {}",
                    num_blocks,
                    n,
                    parts.len()
                )));
            }
            if parts.iter().any(|&p| p == 0) {
                return Err(Error::InvalidPartition(format!(
                    "mode {} contains an empty segment",
                    n
                )));
            }
            let total: usize = parts.iter().sum();
            if total != self.dims[n] {
                return Err(Error::InvalidPartition(format!(
                    "mode {} segments sum to {} but the mode has length {}",
                    n, total, self.dims[n]
                )));
            }
        }

        // segment id and in-segment offset for every index of every
        // partitioned mode
        let mut segment_of: Vec<Vec<usize>> = Vec::with_capacity(n_hat);
        let mut offset_of: Vec<Vec<usize>> = Vec::with_capacity(n_hat);
        for parts in partitions {
            let mut seg = Vec::new();
            let mut off = Vec::new();
            for (r, &p) in parts.iter().enumerate() {
                for local in 0..p {
                    seg.push(r);
                    off.push(local);
                }
            }
            segment_of.push(seg);
            offset_of.push(off);
        }

        let trailing: Vec<usize> = self.dims[n_hat..].to_vec();
        let mut blocks: Vec<DenseTensor> = Vec::with_capacity(num_blocks);
        let mut block_strides: Vec<Vec<usize>> = Vec::with_capacity(num_blocks);
        for r in 0..num_blocks {
            let mut dims: Vec<usize> = partitions.iter().map(|p| p[r]).collect();
            dims.extend_from_slice(&trailing);
            block_strides.push(strides_of(&dims));
            blocks.push(DenseTensor::zeros(dims)?);
        }

        let strides = self.strides();
        let mut off_sq = 0.0;
        for (lin, &v) in self.data.iter().enumerate() {
            let r0 = segment_of[0][(lin / strides[0]) % self.dims[0]];
            let mut diagonal = true;
            for n in 1..n_hat {
                let i_n = (lin / strides[n]) % self.dims[n];
                if segment_of[n][i_n] != r0 {
                    diagonal = false;
                    break;
                }
            }
            if !diagonal {
                off_sq += v.norm_sqr();
                continue;
            }
            let mut local = 0;
            for n in 0..self.order() {
                let i_n = (lin / strides[n]) % self.dims[n];
                let local_i = if n < n_hat { offset_of[n][i_n] } else { i_n };
                local += local_i * block_strides[r0][n];
            }
            blocks[r0].data[local] = v;
        }
        Ok((blocks, off_sq.sqrt()))
    }
}
