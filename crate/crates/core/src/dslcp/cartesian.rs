//! Succinct Cartesian-tree topology codes for in-node range minima.
//!
//! A node holding `k` values is summarized by the balanced-parentheses code
//! of its min-Cartesian tree (`1 left 0 right`, 2k bits, leftmost minimum at
//! the root). For `k <= TABLE_MAX` the position of a range minimum is read
//! from a shared table indexed by `(k, code, i, j)` without touching the
//! values; larger nodes fall back to a bounded scan.

use std::sync::OnceLock;

pub const TABLE_MAX: usize = 8;

/// Largest node length a code can describe (2 bits per value in a `u64`).
pub const CODE_MAX: usize = 32;

/// Topology code of the min-Cartesian tree over `vals`.
pub fn code_of(vals: &[usize]) -> u64 {
    let k = vals.len();
    debug_assert!(k <= CODE_MAX);
    if k == 0 {
        return 0;
    }
    const NIL: u8 = u8::MAX;
    let mut left = [NIL; CODE_MAX];
    let mut right = [NIL; CODE_MAX];
    let mut stack = [0u8; CODE_MAX];
    let mut sp = 0usize;
    for i in 0..k {
        let mut last = NIL;
        // Strict comparison keeps an earlier equal value above a later one.
        while sp > 0 && vals[stack[sp - 1] as usize] > vals[i] {
            sp -= 1;
            last = stack[sp];
        }
        left[i] = last;
        if sp > 0 {
            right[stack[sp - 1] as usize] = i as u8;
        }
        stack[sp] = i as u8;
        sp += 1;
    }
    let root = stack[0];
    // Preorder emission: 1 <left> 0 <right>.
    let mut code = 0u64;
    let mut work = [(0u8, false); 2 * CODE_MAX];
    let mut wp = 0usize;
    work[wp] = (root, false);
    wp += 1;
    while wp > 0 {
        wp -= 1;
        let (n, closing) = work[wp];
        if closing {
            code <<= 1;
            if right[n as usize] != NIL {
                work[wp] = (right[n as usize], false);
                wp += 1;
            }
        } else {
            code = (code << 1) | 1;
            work[wp] = (n, true);
            wp += 1;
            if left[n as usize] != NIL {
                work[wp] = (left[n as usize], false);
                wp += 1;
            }
        }
    }
    code
}

struct Table {
    /// `offsets[k][code]` is the base of the k*k answer block, or `u32::MAX`.
    offsets: Vec<Vec<u32>>,
    answers: Vec<u8>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Parses `1 T 0 T` and returns the depth of every node in in-order.
fn decode_depths(code: u64, k: usize) -> Option<Vec<u32>> {
    let bits = 2 * k;
    let bit = |pos: usize| (code >> (bits - 1 - pos)) & 1 == 1;
    let mut depths = Vec::with_capacity(k);
    // Iterative parse: stack of depths of nodes awaiting their `0`.
    let mut pos = 0usize;
    let mut stack: Vec<u32> = Vec::new();
    let mut depth = 0u32;
    while pos < bits {
        if bit(pos) {
            stack.push(depth);
            depth += 1;
        } else {
            let d = stack.pop()?;
            depths.push(d);
            depth = d + 1;
        }
        pos += 1;
    }
    if !stack.is_empty() || depths.len() != k {
        return None;
    }
    Some(depths)
}

fn build_table() -> Table {
    let mut offsets = vec![Vec::new(); TABLE_MAX + 1];
    let mut answers = Vec::new();
    for (k, slot) in offsets.iter_mut().enumerate().skip(1) {
        let n_codes = 1usize << (2 * k);
        let mut offs = vec![u32::MAX; n_codes];
        for (code, off) in offs.iter_mut().enumerate() {
            let Some(depths) = decode_depths(code as u64, k) else {
                continue;
            };
            let vals: Vec<usize> = depths.iter().map(|&d| d as usize).collect();
            if code_of(&vals) != code as u64 {
                continue;
            }
            *off = answers.len() as u32;
            for i in 0..k {
                for j in 0..k {
                    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                    answers.push(scan_min(&vals, lo, hi) as u8);
                }
            }
        }
        *slot = offs;
    }
    Table { offsets, answers }
}

/// Leftmost position of the minimum of `vals[i..=j]`.
#[inline]
pub fn scan_min(vals: &[usize], i: usize, j: usize) -> usize {
    let mut best = i;
    for p in i + 1..=j {
        if vals[p] < vals[best] {
            best = p;
        }
    }
    best
}

/// Position of the (leftmost) minimum of `vals[i..=j]` for a node whose
/// topology code is `code`.
#[inline]
pub fn range_min(code: u64, vals: &[usize], i: usize, j: usize) -> usize {
    let k = vals.len();
    if k <= TABLE_MAX {
        let t = table();
        let off = t.offsets[k][code as usize];
        debug_assert!(off != u32::MAX, "invalid topology code");
        t.answers[off as usize + i * k + j] as usize
    } else {
        scan_min(vals, i, j)
    }
}

/// Number of distinct topologies with a table entry for length `k`.
pub fn table_shapes(k: usize) -> usize {
    table().offsets[k].iter().filter(|&&o| o != u32::MAX).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn catalan_many_shapes() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
        for k in 1..=TABLE_MAX {
            assert_eq!(table_shapes(k), catalan[k], "k={k}");
        }
    }

    #[test]
    fn small_codes() {
        assert_eq!(code_of(&[1]), 0b10);
        // root 0 with right child 1
        assert_eq!(code_of(&[0, 1]), 0b1010);
        // root at position 1 with left child 0
        assert_eq!(code_of(&[1, 0]), 0b1100);
        // ties: leftmost is the root
        assert_eq!(code_of(&[3, 3]), 0b1010);
    }

    proptest! {
        #[test]
        fn table_agrees_with_scan(vals in proptest::collection::vec(0usize..6, 1..=12), a in 0usize..12, b in 0usize..12) {
            let k = vals.len();
            let (i, j) = { let (x, y) = (a % k, b % k); if x <= y { (x, y) } else { (y, x) } };
            let code = code_of(&vals);
            prop_assert_eq!(range_min(code, &vals, i, j), scan_min(&vals, i, j));
        }
    }
}
