use super::KernelError;

/// Koszul sign of rearranging graded items.
///
/// `perm[k]` is the original position of the item that ends up at position
/// `k`; `degrees[i]` is the degree of the item originally at position `i`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<i8, KernelError> {
    if perm.len() != degrees.len() {
        return Err(KernelError::LengthMismatch {
            left: perm.len(),
            right: degrees.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(KernelError::NotAPermutation);
        }
    }
    let odd: Vec<bool> = degrees.iter().map(|d| d.rem_euclid(2) == 1).collect();
    Ok(koszul_sign_parities(perm, &odd))
}

/// Same as [`koszul_sign`] with parities given directly and no validation.
pub fn koszul_sign_parities(perm: &[usize], odd: &[bool]) -> i8 {
    let mut flips = 0usize;
    for k in 0..perm.len() {
        if !odd[perm[k]] {
            continue;
        }
        for l in (k + 1)..perm.len() {
            if odd[perm[l]] && perm[l] < perm[k] {
                flips += 1;
            }
        }
    }
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Koszul sign of the arrangement `order`, a sequence of distinct original
/// positions that need not cover all of them. Positions absent from `order`
/// are ignored.
pub fn koszul_sign_of_sequence(order: &[usize], odd: impl Fn(usize) -> bool) -> i8 {
    let mut flips = 0usize;
    for k in 0..order.len() {
        if !odd(order[k]) {
            continue;
        }
        for l in (k + 1)..order.len() {
            if order[l] < order[k] && odd(order[l]) {
                flips += 1;
            }
        }
    }
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let pivot = i - 1;
        let j = (i..n).rev().find(|&j| current[j] > current[pivot]).unwrap();
        current.swap(pivot, j);
        current[i..].reverse();
    }
    out
}

/// Ordered splits `I ⊔ J = 0..n` with both parts nonempty, each part listed
/// increasingly. Enumerated by bitmask, so there are `2^n - 2` of them.
pub fn ordered_splits(n: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    (1..full).map(move |mask| {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for i in 0..n {
            if mask >> i & 1 == 1 {
                left.push(i);
            } else {
                right.push(i);
            }
        }
        (left, right)
    })
}

/// All set partitions of `0..n` into nonempty blocks; blocks are ordered by
/// their smallest element and listed increasingly.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}
