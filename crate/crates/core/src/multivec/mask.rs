//! Index sets as bitmasks and the signs of exterior algebra.

pub fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| m & (1 << i) != 0)
}

pub fn from_indices(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn degree(m: u32) -> usize {
    m.count_ones() as usize
}

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for t in bits(b) {
        swaps += (a >> (t + 1)).count_ones();
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Remove slot `s` from the front: `e_S = sign · e_s ∧ e_{S∖s}`.
pub fn left_remove(m: u32, s: usize) -> Option<(u32, i64)> {
    if m & (1 << s) == 0 {
        return None;
    }
    let below = (m & ((1u32 << s) - 1)).count_ones();
    Some((m & !(1 << s), if below.is_multiple_of(2) { 1 } else { -1 }))
}

/// Remove slot `s` from the back: `e_S = sign · e_{S∖s} ∧ e_s`.
pub fn right_remove(m: u32, s: usize) -> Option<(u32, i64)> {
    if m & (1 << s) == 0 {
        return None;
    }
    let above = (m >> (s + 1)).count_ones();
    Some((m & !(1 << s), if above.is_multiple_of(2) { 1 } else { -1 }))
}

/// Canonical sort key: degree first, then the increasing index list.
pub fn canonical_key(m: u32) -> (usize, Vec<usize>) {
    (degree(m), bits(m).collect())
}

/// All masks of `size` elements drawn from `0..n`, in canonical order.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1u32 << n)).filter(|m| degree(*m) == size).collect();
    out.sort_by_key(|&m| canonical_key(m));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        assert_eq!(left_remove(0b11, 1), Some((0b01, -1)));
        assert_eq!(right_remove(0b11, 0), Some((0b10, -1)));
        assert_eq!(subsets_of_size(3, 2), vec![0b011, 0b101, 0b110]);
    }
}
