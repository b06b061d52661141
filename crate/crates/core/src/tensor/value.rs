use serde::{Deserialize, Serialize};

/// Dense covariant tensor of valence `k` at a point; row-major `n^k` array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorValue {
    pub valence: usize,
    pub n: usize,
    pub data: Vec<f64>,
    pub point: Vec<f64>,
}

impl TensorValue {
    pub fn zeros(valence: usize, n: usize, point: &[f64]) -> Self {
        TensorValue {
            valence,
            n,
            data: vec![0.0; n.pow(valence as u32)],
            point: point.to_vec(),
        }
    }

    pub fn from_data(valence: usize, n: usize, data: Vec<f64>, point: &[f64]) -> Self {
        assert_eq!(data.len(), n.pow(valence as u32), "tensor data length");
        TensorValue {
            valence,
            n,
            data,
            point: point.to_vec(),
        }
    }

    pub fn scalar(v: f64, point: &[f64]) -> Self {
        TensorValue {
            valence: 0,
            n: point.len(),
            data: vec![v],
            point: point.to_vec(),
        }
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.valence, "index count");
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, o: &TensorValue) -> TensorValue {
        assert_eq!(
            (self.valence, self.n),
            (o.valence, o.n),
            "tensor shape mismatch"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        TensorValue {
            data,
            ..self.clone()
        }
    }

    pub fn add(&self, o: &TensorValue) -> TensorValue {
        assert_eq!(
            (self.valence, self.n),
            (o.valence, o.n),
            "tensor shape mismatch"
        );
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        TensorValue {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: f64) -> TensorValue {
        TensorValue {
            data: self.data.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    pub fn max_abs_diff(&self, o: &TensorValue) -> f64 {
        self.sub(o).max_abs()
    }

    /// All multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.n;
        let k = self.valence;
        (0..self.data.len()).map(move |mut o| {
            let mut idx = vec![0; k];
            for slot in idx.iter_mut().rev() {
                *slot = o % n;
                o /= n;
            }
            idx
        })
    }
}
