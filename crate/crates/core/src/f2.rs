//! Linear algebra over F2 on vectors packed into `u64`.

pub const MAX_BITS: usize = 64;

pub fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// `<a, b>` in F2.
pub fn dot(a: u64, b: u64) -> bool {
    parity(a & b)
}

pub fn mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

pub fn bits(x: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| x >> i & 1 == 1)
}

pub fn rank(rows: &[u64]) -> usize {
    let mut pivots: Vec<u64> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &p in &pivots {
            r = r.min(r ^ p);
        }
        if r != 0 {
            pivots.push(r);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    pivots.len()
}

/// A basis in which every vector owns a marker bit that no other basis vector has.
///
/// Decomposing a vector then reads its coordinates off the marker bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBasis {
    vectors: Vec<u64>,
    markers: Vec<usize>,
}

impl MarkedBasis {
    pub fn standard(k: usize) -> MarkedBasis {
        MarkedBasis {
            vectors: (0..k).map(|i| 1u64 << i).collect(),
            markers: (0..k).collect(),
        }
    }

    /// Basis of `{x in F2^k : <c, x> = 0 for every constraint c}`.
    ///
    /// The constraint system is row reduced with pivots at the lowest set bit;
    /// the kernel vectors are marked by the free columns.
    pub fn kernel(constraints: &[u64], k: usize) -> MarkedBasis {
        let mut rows: Vec<u64> = Vec::new();
        for &c in constraints {
            let mut r = c & mask(k);
            for &p in &rows {
                if r >> p.trailing_zeros() & 1 == 1 {
                    r ^= p;
                }
            }
            if r == 0 {
                continue;
            }
            let lead = r.trailing_zeros();
            for p in rows.iter_mut() {
                if *p >> lead & 1 == 1 {
                    *p ^= r;
                }
            }
            rows.push(r);
        }
        let pivot_cols: Vec<u32> = rows.iter().map(|r| r.trailing_zeros()).collect();
        let mut vectors = Vec::new();
        let mut markers = Vec::new();
        for j in 0..k {
            if pivot_cols.contains(&(j as u32)) {
                continue;
            }
            let mut v = 1u64 << j;
            for r in &rows {
                if r >> j & 1 == 1 {
                    v |= 1u64 << r.trailing_zeros();
                }
            }
            vectors.push(v);
            markers.push(j);
        }
        MarkedBasis { vectors, markers }
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }

    pub fn markers(&self) -> &[usize] {
        &self.markers
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `x` as a bit mask over basis indices, or `None` if `x` is outside the span.
    pub fn decompose(&self, x: u64) -> Option<u64> {
        let mut coords = 0u64;
        let mut rebuilt = 0u64;
        for (i, (&v, &m)) in self.vectors.iter().zip(&self.markers).enumerate() {
            if x >> m & 1 == 1 {
                coords |= 1 << i;
                rebuilt ^= v;
            }
        }
        (rebuilt == x).then_some(coords)
    }

    pub fn combine(&self, coords: u64) -> u64 {
        bits(coords).fold(0, |acc, i| acc ^ self.vectors[i])
    }

    /// Every element of the span, in the order of their coordinate masks.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.dim()).map(move |c| self.combine(c))
    }
}
