//! Word-packed bit rows for subset-sum presence tables.
//!
//! Bit `m` of a row says whether sum `m` is achievable. The only nontrivial
//! operation is `or_shifted`, the presence shadow of multiplying a
//! generating polynomial by `(1 + x^q)`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Bits at or beyond `len` read as unset.
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Copy of `self` widened to `len` bits (len >= self.len).
    pub fn widened(&self, len: usize) -> Self {
        debug_assert!(len >= self.len);
        let mut row = BitRow::zeros(len);
        row.words[..self.words.len()].copy_from_slice(&self.words);
        row
    }

    /// `self |= other << shift`, truncating bits that fall at or beyond
    /// `self.len`.
    pub fn or_shifted(&mut self, other: &BitRow, shift: usize) {
        if shift >= self.len {
            return;
        }
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let n = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            if lo >= n {
                break;
            }
            self.words[lo] |= w << bit_shift;
            if bit_shift > 0 && lo + 1 < n {
                self.words[lo + 1] |= w >> (64 - bit_shift);
            }
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i * 64;
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |&w| {
                    let w = w & (w - 1);
                    if w == 0 {
                        None
                    } else {
                        Some(w)
                    }
                },
            )
            .map(move |w| base + w.trailing_zeros() as usize)
        })
    }
}
