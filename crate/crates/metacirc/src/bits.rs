//! Packed bit vectors and the few F2 matrix operations the rest of the
//! crate needs. Rows are fixed-length; all indices are 0-based here, the
//! 1-based vertex labels used in edge lists are applied at the graph layer.

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Fixed-length bit vector packed into u64 words. Trailing bits of the last
/// word are kept zero so popcounts and comparisons work on whole words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { len, words: vec![0; words_for(len)] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let w = &mut self.words[i / WORD_BITS];
        let m = 1u64 << (i % WORD_BITS);
        if v {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// popcount(self | other), the Hamming weight of the union.
    pub fn or_count(&self, other: &BitRow) -> u32 {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    pub fn and_assign(&mut self, other: &BitRow) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersects(&self, other: &BitRow) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Parity of popcount(self & other), the F2 dot product.
    pub fn and_parity(&self, other: &BitRow) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |p, (a, b)| p ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    return None;
                }
                let b = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Concatenation used for rank computations on (a ‖ b) generator rows.
    pub fn concat(&self, other: &BitRow) -> BitRow {
        let mut out = BitRow::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Rank of a list of rows over F2 by destructive Gaussian elimination.
pub fn f2_rank(rows: &[BitRow]) -> usize {
    let mut basis: Vec<BitRow> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            let pivot = b.iter_ones().next().expect("basis rows are nonzero");
            if r.get(pivot) {
                r.xor_assign(b);
            }
        }
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis.len()
}
