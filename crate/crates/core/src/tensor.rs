//! Dense row-major f64 tensors with size-1 broadcasting.

use crate::error::{Error, Result};

/// Dense n-dimensional array of 64-bit floats.
///
/// Storage is a flat row-major buffer; `shape.iter().product() == data.len()`
/// always holds. Broadcasting is limited to stretching size-1 axes after
/// right-aligning the two shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::Contract(format!(
                "tensor shape {:?} implies {} elements, got {}",
                shape,
                numel,
                data.len()
            )));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        let numel = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![0.0; numel] }
    }

    pub fn filled(shape: &[usize], value: f64) -> Self {
        let numel = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![value; numel] }
    }

    /// Scalar as a one-element rank-1 tensor.
    pub fn scalar(value: f64) -> Self {
        Tensor { shape: vec![1], data: vec![value] }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.data.len() == 1
    }

    pub fn item(&self) -> f64 {
        debug_assert!(self.is_scalar());
        self.data[0]
    }

    /// Element lookup by multi-index; intended for tests and report code.
    pub fn at(&self, index: &[usize]) -> f64 {
        debug_assert_eq!(index.len(), self.shape.len());
        let mut flat = 0;
        for (i, (&ix, &dim)) in index.iter().zip(&self.shape).enumerate() {
            debug_assert!(ix < dim, "index {ix} out of bounds for axis {i} (dim {dim})");
            flat = flat * dim + ix;
        }
        self.data[flat]
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Row-major strides for a shape.
pub fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![0; shape.len()];
    let mut acc = 1;
    for (s, &dim) in strides.iter_mut().zip(shape).rev() {
        *s = acc;
        acc *= dim;
    }
    strides
}

/// Broadcast result shape of two shapes (right-aligned, size-1 stretching).
pub fn broadcast_shapes(op: &'static str, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let rank = a.len().max(b.len());
    let mut out = vec![0; rank];
    for i in 0..rank {
        let da = if i < rank - a.len() { 1 } else { a[i - (rank - a.len())] };
        let db = if i < rank - b.len() { 1 } else { b[i - (rank - b.len())] };
        if da != db && da != 1 && db != 1 {
            return Err(Error::Dimension { op, left: a.to_vec(), right: b.to_vec() });
        }
        out[i] = da.max(db);
    }
    Ok(out)
}

/// Strides of `shape` viewed as `out_rank`-dimensional with broadcast axes
/// pinned to stride 0. Used to stream through broadcast operands without
/// materializing the expansion.
pub fn broadcast_strides(shape: &[usize], out_shape: &[usize]) -> Vec<usize> {
    let rank = out_shape.len();
    let own = strides_of(shape);
    let offset = rank - shape.len();
    let mut out = vec![0; rank];
    for i in 0..shape.len() {
        out[offset + i] = if shape[i] == 1 { 0 } else { own[i] };
    }
    out
}

/// Odometer over `shape` that tracks flat offsets into two broadcast
/// operands simultaneously.
pub struct BroadcastIter {
    shape: Vec<usize>,
    counters: Vec<usize>,
    strides_a: Vec<usize>,
    strides_b: Vec<usize>,
    offset_a: usize,
    offset_b: usize,
    remaining: usize,
}

impl BroadcastIter {
    pub fn new(out_shape: &[usize], a_shape: &[usize], b_shape: &[usize]) -> Self {
        let numel = out_shape.iter().product();
        BroadcastIter {
            shape: out_shape.to_vec(),
            counters: vec![0; out_shape.len()],
            strides_a: broadcast_strides(a_shape, out_shape),
            strides_b: broadcast_strides(b_shape, out_shape),
            offset_a: 0,
            offset_b: 0,
            remaining: numel,
        }
    }
}

impl Iterator for BroadcastIter {
    /// (a_offset, b_offset) flat index pair for the next output element.
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.remaining == 0 {
            return None;
        }
        let item = (self.offset_a, self.offset_b);
        self.remaining -= 1;
        // Advance the odometer from the innermost axis outward.
        for axis in (0..self.shape.len()).rev() {
            self.counters[axis] += 1;
            self.offset_a += self.strides_a[axis];
            self.offset_b += self.strides_b[axis];
            if self.counters[axis] < self.shape[axis] {
                break;
            }
            self.offset_a -= self.strides_a[axis] * self.shape[axis];
            self.offset_b -= self.strides_b[axis] * self.shape[axis];
            self.counters[axis] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_length_mismatch() {
        assert!(Tensor::new(vec![2, 3], vec![0.0; 5]).is_err());
        assert!(Tensor::new(vec![2, 3], vec![0.0; 6]).is_ok());
    }

    #[test]
    fn broadcast_shape_rules() {
        assert_eq!(broadcast_shapes("t", &[2, 1, 3], &[2, 5, 3]).unwrap(), vec![2, 5, 3]);
        assert_eq!(broadcast_shapes("t", &[4], &[2, 3, 4]).unwrap(), vec![2, 3, 4]);
        assert!(broadcast_shapes("t", &[2, 3], &[2, 4]).is_err());
    }

    #[test]
    fn broadcast_iter_matches_explicit_expansion() {
        // (2,1,3) against (1,4,3): offsets must re-read the size-1 axes.
        let a_shape = [2usize, 1, 3];
        let b_shape = [1usize, 4, 3];
        let out = broadcast_shapes("t", &a_shape, &b_shape).unwrap();
        let pairs: Vec<(usize, usize)> = BroadcastIter::new(&out, &a_shape, &b_shape).collect();
        assert_eq!(pairs.len(), 24);
        let mut i = 0;
        for b0 in 0..2 {
            for b1 in 0..4 {
                for b2 in 0..3 {
                    let expect_a = b0 * 3 + b2;
                    let expect_b = b1 * 3 + b2;
                    assert_eq!(pairs[i], (expect_a, expect_b));
                    i += 1;
                }
            }
        }
    }
}
