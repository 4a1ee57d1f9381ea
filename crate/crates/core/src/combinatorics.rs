//! Binomial counts and lexicographic k-subset enumeration.

use alloc::vec::Vec;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All strictly ascending `k`-subsets of `items`, in lexicographic order.
pub fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(3, 3), 1);
        assert_eq!(binomial(22, 11), 705_432);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let sites: Vec<usize> = (1..=6).collect();
        let c = combinations(&sites, 2);
        assert_eq!(c.len(), 15);
        assert_eq!(c[0], [1, 2]);
        assert_eq!(c[14], [5, 6]);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(combinations(&sites, 0), [Vec::<usize>::new()]);
        assert_eq!(combinations(&sites, 6).len(), 1);
        assert!(combinations(&sites, 7).is_empty());
        for n in 0..9 {
            let items: Vec<usize> = (0..n).collect();
            for k in 0..=n {
                assert_eq!(combinations(&items, k).len(), binomial(n, k));
            }
        }
    }
}
