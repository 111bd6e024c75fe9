//! Short t-error-correcting component codes with bounded distance decoding.
//!
//! A component code lives at a super check: its length equals the check
//! degree and its bounded distance decoder (BDD) either finds the unique
//! codeword within Hamming radius `t` or reports failure. Codes are capped
//! at length 63 so words and flip sets fit in a `u64`.
//!
//! Construction precomputes the syndrome table over all coset leaders of
//! weight at most `t`; a duplicate syndrome among the leaders is exactly a
//! codeword of weight below `2t+1`, so the table doubles as the minimum
//! distance check.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::gf2::BinaryMatrix;

/// Maximum supported component length (words are packed in a `u64`).
pub const MAX_LEN: usize = 63;

/// Component-code construction failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentError {
    /// Verified minimum distance is below `2t+1`; the offending low-weight
    /// codeword's support is reported.
    DistanceTooSmall { needed: usize, codeword: Vec<usize> },
    /// Length out of the supported range `1..=63`.
    LengthUnsupported { n: usize },
    /// Correction radius out of the supported range `1..=3`.
    RadiusUnsupported { t: usize },
}

impl fmt::Display for ComponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentError::DistanceTooSmall { needed, codeword } => write!(
                f,
                "minimum distance below {needed}: found codeword of weight {} with support {:?}",
                codeword.len(),
                codeword
            ),
            ComponentError::LengthUnsupported { n } => {
                write!(f, "component length {n} outside 1..={MAX_LEN}")
            }
            ComponentError::RadiusUnsupported { t } => {
                write!(f, "correction radius {t} outside 1..=3")
            }
        }
    }
}

impl core::error::Error for ComponentError {}

/// A validated t-error-correcting linear block code with a syndrome-table
/// bounded distance decoder.
#[derive(Clone)]
pub struct ComponentCode {
    n: usize,
    t: usize,
    h: BinaryMatrix,
    h_rank: usize,
    /// Syndrome of each unit vector.
    col_syndromes: Vec<u64>,
    table: SyndromeTable,
}

#[derive(Clone)]
enum SyndromeTable {
    /// Indexed directly by syndrome; used when `m <= 24`.
    Dense(Vec<u64>),
    /// Sorted `(syndrome, flip mask)` pairs for larger `m`.
    Sorted(Vec<(u64, u64)>),
}

const NO_ENTRY: u64 = u64::MAX;

impl ComponentCode {
    /// Builds and validates a component code from its parity-check matrix.
    ///
    /// Fails if two coset leaders of weight `<= t` collide, naming the
    /// implied low-weight codeword.
    pub fn from_parity_check(h: BinaryMatrix, t: usize) -> Result<Self, ComponentError> {
        let n = h.cols();
        let m = h.rows();
        if n == 0 || n > MAX_LEN || m > MAX_LEN {
            return Err(ComponentError::LengthUnsupported { n });
        }
        if t == 0 || t > 3 {
            return Err(ComponentError::RadiusUnsupported { t });
        }

        let mut col_syndromes = vec![0u64; n];
        for (j, s) in col_syndromes.iter_mut().enumerate() {
            for i in 0..m {
                if h.get(i, j) {
                    *s |= 1 << i;
                }
            }
        }

        let syndrome_of = |mask: u64| -> u64 {
            let mut s = 0;
            let mut rest = mask;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                s ^= col_syndromes[j];
                rest &= rest - 1;
            }
            s
        };

        // Every coset leader of weight <= t, in ascending weight so that a
        // collision always pins the smallest codeword.
        let mut entries: Vec<(u64, u64)> = Vec::new();
        let mut probe = |mask: u64, entries: &mut Vec<(u64, u64)>| -> Result<(), ComponentError> {
            let s = syndrome_of(mask);
            if let Some(&(_, prev)) = entries.iter().find(|&&(es, _)| es == s) {
                let cw = prev ^ mask;
                return Err(ComponentError::DistanceTooSmall {
                    needed: 2 * t + 1,
                    codeword: mask_support(cw),
                });
            }
            entries.push((s, mask));
            Ok(())
        };

        probe(0, &mut entries)?;
        for w in 1..=t {
            for mask in crate::verify::masks_of_weight(n, w) {
                probe(mask, &mut entries)?;
            }
        }

        let table = if m <= 24 {
            let mut dense = vec![NO_ENTRY; 1 << m];
            for &(s, mask) in &entries {
                dense[s as usize] = mask;
            }
            SyndromeTable::Dense(dense)
        } else {
            let mut sorted = entries.clone();
            sorted.sort_unstable_by_key(|&(s, _)| s);
            SyndromeTable::Sorted(sorted)
        };

        let h_rank = h.rank();
        Ok(ComponentCode { n, t, h, h_rank, col_syndromes, table })
    }

    /// The narrow-sense binary BCH(31,21) code, t = 2.
    ///
    /// GF(32) is represented with the primitive polynomial x^5 + x^2 + 1;
    /// column j of the parity-check matrix stacks the bit patterns of a^j
    /// and a^(3j).
    pub fn bch_31_21() -> Self {
        let mut pow = [0u8; 31];
        let mut x = 1u8;
        for entry in pow.iter_mut() {
            *entry = x;
            x <<= 1;
            if x & 0b10_0000 != 0 {
                x = (x ^ 0b10_0101) & 0b1_1111;
            }
        }
        let mut h = BinaryMatrix::zero(10, 31);
        for j in 0..31 {
            let a = pow[j];
            let b = pow[(3 * j) % 31];
            for bit in 0..5 {
                h.set(bit, j, a >> bit & 1 == 1);
                h.set(5 + bit, j, b >> bit & 1 == 1);
            }
        }
        let code = Self::from_parity_check(h, 2).expect("BCH(31,21) has distance 5");
        debug_assert_eq!(code.dimension(), 21);
        code
    }

    /// The length-n binary repetition code with radius `t` (at most
    /// `(n-1)/2`). The natural 2-error-correcting component for super checks
    /// of degree 5.
    pub fn repetition(n: usize, t: usize) -> Result<Self, ComponentError> {
        if n < 2 || n > MAX_LEN {
            return Err(ComponentError::LengthUnsupported { n });
        }
        let mut h = BinaryMatrix::zero(n - 1, n);
        for i in 0..n - 1 {
            h.set(i, i, true);
            h.set(i, i + 1, true);
        }
        Self::from_parity_check(h, t)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Guaranteed correction radius.
    pub fn radius(&self) -> usize {
        self.t
    }

    /// Number of parity rows `m` of the stored matrix.
    pub fn parity_rows(&self) -> usize {
        self.h.rows()
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    /// Code dimension `n - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.n - self.h_rank
    }

    /// Rank-based rate `(n - rank(H)) / n`.
    pub fn rate(&self) -> Ratio<i64> {
        Ratio::new(self.dimension() as i64, self.n as i64)
    }

    pub fn syndrome(&self, word: u64) -> u64 {
        let mut s = 0;
        let mut rest = word;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            s ^= self.col_syndromes[j];
            rest &= rest - 1;
        }
        s
    }

    pub fn is_codeword(&self, word: u64) -> bool {
        self.syndrome(word) == 0
    }

    /// Bounded distance decoding of an n-bit word.
    ///
    /// Returns the flip mask to the unique codeword within radius `t`, or
    /// `None` when no codeword is that close. The mask has weight `<= t`.
    pub fn bdd_decode(&self, word: u64) -> Option<u64> {
        let s = self.syndrome(word);
        match &self.table {
            SyndromeTable::Dense(d) => {
                let e = d[s as usize];
                (e != NO_ENTRY).then_some(e)
            }
            SyndromeTable::Sorted(v) => {
                v.binary_search_by_key(&s, |&(es, _)| es).ok().map(|i| v[i].1)
            }
        }
    }
}

impl fmt::Debug for ComponentCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComponentCode(n={}, k={}, t={})", self.n, self.dimension(), self.t)
    }
}

/// The decoding behavior attached to super checks of a hybrid code.
///
/// `Code` is a real component code whose length must match the super-check
/// degree. `Ideal` is the radius-t abstraction used for isolated subgraph
/// analysis: any word of weight at most `t` decodes to zero, anything
/// heavier reports failure, and the only codeword in view is zero. On words
/// of weight at most `t` the two behave identically.
#[derive(Clone, Debug)]
pub enum SuperCheckCode {
    Code(ComponentCode),
    Ideal { t: usize },
}

impl SuperCheckCode {
    /// Required super-check degree, when the code fixes one.
    pub fn required_len(&self) -> Option<usize> {
        match self {
            SuperCheckCode::Code(c) => Some(c.len()),
            SuperCheckCode::Ideal { .. } => None,
        }
    }

    pub fn radius(&self) -> usize {
        match self {
            SuperCheckCode::Code(c) => c.radius(),
            SuperCheckCode::Ideal { t } => *t,
        }
    }

    pub fn bdd_decode(&self, word: u64) -> Option<u64> {
        match self {
            SuperCheckCode::Code(c) => c.bdd_decode(word),
            SuperCheckCode::Ideal { t } => (word.count_ones() as usize <= *t).then_some(word),
        }
    }

    pub fn is_codeword(&self, word: u64) -> bool {
        match self {
            SuperCheckCode::Code(c) => c.is_codeword(word),
            SuperCheckCode::Ideal { .. } => word == 0,
        }
    }
}

fn mask_support(mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;

    fn hamming_7_4() -> BinaryMatrix {
        BinaryMatrix::from_rows(&[
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ])
    }

    #[test]
    fn bch_31_21_parameters() {
        let code = ComponentCode::bch_31_21();
        assert_eq!(code.len(), 31);
        assert_eq!(code.dimension(), 21);
        assert_eq!(code.radius(), 2);
        assert_eq!(code.rate(), Ratio::new(21, 31));
    }

    #[test]
    fn zero_word_decodes_to_empty_flip_set() {
        let code = ComponentCode::bch_31_21();
        assert_eq!(code.bdd_decode(0), Some(0));
    }

    #[test]
    fn single_flip_recovered() {
        let code = ComponentCode::bch_31_21();
        for i in 0..31 {
            assert_eq!(code.bdd_decode(1 << i), Some(1 << i));
        }
    }

    #[test]
    fn all_weight_le_t_errors_recovered_exactly() {
        // Every weight-1 and weight-2 error on the zero codeword comes back.
        let code = ComponentCode::bch_31_21();
        for w in 1..=2 {
            for e in crate::verify::masks_of_weight(31, w) {
                assert_eq!(code.bdd_decode(e), Some(e));
            }
        }
    }

    #[test]
    fn weight_3_matches_sphere_search_oracle() {
        // Spot-checked here on a deterministic sample; the full 10^4-input
        // comparison runs in the acceptance suite.
        let code = ComponentCode::bch_31_21();
        let mut s = 0x243f6a8885a308d3u64;
        for _ in 0..300 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let word = s & ((1 << 31) - 1);
            assert_eq!(code.bdd_decode(word), brute::sphere_decode(code.parity_check(), word, 2));
        }
    }

    #[test]
    fn flip_sets_never_exceed_radius() {
        let code = ComponentCode::bch_31_21();
        let mut s = 0xb7e151628aed2a6au64;
        for _ in 0..2_000 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            if let Some(flips) = code.bdd_decode(s & ((1 << 31) - 1)) {
                assert!(flips.count_ones() <= 2);
            }
        }
    }

    #[test]
    fn miscorrection_lands_on_a_codeword() {
        // Whenever a weight-3 input decodes, applying the flips must give a
        // zero syndrome.
        let code = ComponentCode::bch_31_21();
        let mut hits = 0;
        for e in crate::verify::masks_of_weight(31, 3).into_iter().step_by(7) {
            if let Some(flips) = code.bdd_decode(e) {
                assert!(code.is_codeword(e ^ flips));
                hits += 1;
            }
        }
        assert!(hits > 0, "expected some weight-3 miscorrections");
    }

    #[test]
    fn single_parity_row_rejected_for_t_1() {
        let h = BinaryMatrix::from_rows(&[vec![1, 1, 1, 1]]);
        let err = ComponentCode::from_parity_check(h, 1).unwrap_err();
        match err {
            ComponentError::DistanceTooSmall { needed: 3, codeword } => {
                assert_eq!(codeword.len(), 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn hamming_7_4_accepted_for_t_1() {
        // Distance 3, checked independently by enumerating all 16 codewords.
        let code = ComponentCode::from_parity_check(hamming_7_4(), 1).unwrap();
        assert_eq!(code.dimension(), 4);
        let h = hamming_7_4();
        let mut min_weight = usize::MAX;
        for word in 1u64..(1 << 7) {
            let mut in_code = true;
            for r in 0..3 {
                let mut parity = 0;
                for c in 0..7 {
                    if h.get(r, c) {
                        parity ^= word >> c & 1;
                    }
                }
                if parity != 0 {
                    in_code = false;
                    break;
                }
            }
            if in_code {
                min_weight = min_weight.min(word.count_ones() as usize);
            }
        }
        assert_eq!(min_weight, 3);
    }

    #[test]
    fn hamming_rejected_for_t_2() {
        let err = ComponentCode::from_parity_check(hamming_7_4(), 2).unwrap_err();
        assert!(matches!(err, ComponentError::DistanceTooSmall { needed: 5, .. }));
    }

    #[test]
    fn repetition_5_is_a_valid_radius_2_component() {
        let code = ComponentCode::repetition(5, 2).unwrap();
        assert_eq!(code.dimension(), 1);
        assert_eq!(code.rate(), Ratio::new(1, 5));
        // Perfect code: weight-3 words miscorrect toward all-ones.
        assert_eq!(code.bdd_decode(0b00111), Some(0b11000));
    }

    #[test]
    fn ideal_code_decodes_by_weight() {
        let ideal = SuperCheckCode::Ideal { t: 2 };
        assert_eq!(ideal.bdd_decode(0b0101), Some(0b0101));
        assert_eq!(ideal.bdd_decode(0b0111), None);
        assert!(ideal.is_codeword(0));
        assert!(!ideal.is_codeword(0b1000));
    }
}
