//! Small dense GF(2) linear algebra over `u64` row vectors.

/// Reduced basis with distinct leading bits, kept sorted by leading bit (descending).
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    rows: Vec<u64>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pos = self
            .rows
            .partition_point(|&x| x.leading_zeros() < r.leading_zeros());
        self.rows.insert(pos, r);
        true
    }
}

pub fn parity(v: u64) -> u64 {
    (v.count_ones() & 1) as u64
}

/// Basis of `{v in GF(2)^nbits : parity(v & row) == 0 for every row}`.
pub fn null_space(rows: &[u64], nbits: usize) -> Vec<u64> {
    // Gauss-Jordan on the constraint rows, then read off free variables.
    let mut m: Vec<u64> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..nbits {
        let bit = 1u64 << col;
        let Some(sel) = (r..m.len()).find(|&i| m[i] & bit != 0) else {
            continue;
        };
        m.swap(r, sel);
        for i in 0..m.len() {
            if i != r && m[i] & bit != 0 {
                m[i] ^= m[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..nbits).filter(|c| !pivots.contains(c)) {
        let mut v = 1u64 << free;
        for (i, &p) in pivots.iter().enumerate() {
            if m[i] >> free & 1 == 1 {
                v |= 1u64 << p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Finds `v` with `parity(v & rows[i]) == rhs[i]` for all i, if one exists.
pub fn solve(rows: &[u64], rhs: &[bool], nbits: usize) -> Option<u64> {
    assert_eq!(rows.len(), rhs.len());
    assert!(nbits < 64);
    // augment the right-hand side as bit `nbits`
    let aug = 1u64 << nbits;
    let mut m: Vec<u64> = rows
        .iter()
        .zip(rhs)
        .map(|(&r, &b)| if b { r | aug } else { r })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nbits {
        let bit = 1u64 << col;
        let Some(sel) = (r..m.len()).find(|&i| m[i] & bit != 0) else {
            continue;
        };
        m.swap(r, sel);
        for i in 0..m.len() {
            if i != r && m[i] & bit != 0 {
                m[i] ^= m[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|&row| row & aug != 0) {
        return None;
    }
    let mut v = 0u64;
    for (i, &p) in pivots.iter().enumerate() {
        if m[i] & aug != 0 {
            v |= 1u64 << p;
        }
    }
    Some(v)
}
