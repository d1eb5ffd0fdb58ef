use crate::bits::BitString;

/// Binary numerals of `0, 1, ..., n` concatenated without separators.
pub fn champernowne(n: u64) -> BitString {
    let mut out = BitString::with_capacity(champernowne_len(n) as usize);
    out.push(false);
    for i in 1..=n {
        out.push_u64(i, 64 - i.leading_zeros());
    }
    out
}

/// Closed-form length of [`champernowne`]`(n)`, counting one bit for zero.
pub fn champernowne_len(n: u64) -> u64 {
    let mut total = 1u64;
    let mut width = 1u32;
    let mut low = 1u64;
    while low <= n {
        let high = low.saturating_mul(2).saturating_sub(1).min(n);
        total += u64::from(width) * (high - low + 1);
        width += 1;
        match low.checked_mul(2) {
            Some(next) => low = next,
            None => break,
        }
    }
    total
}
