//! Comparison sorting with exact worst-case counts: binary insertion,
//! two-run merging, grouped mergesort and merge insertion (Ford-Johnson).
//!
//! The `_by` functions sort a slice of item ids with a comparison closure;
//! the plain versions sort all ids of a [`Comparator`].

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::intmath::{ceil_log2, ceil_log2_factorial};
use crate::oracles::Comparator;

pub type CmpFn<'a> = dyn FnMut(usize, usize) -> Ordering + 'a;

fn less(cmp: &mut CmpFn<'_>, a: usize, b: usize) -> bool {
    cmp(a, b) == Ordering::Less
}

// Slot index where x goes among run[..bound], plain binary search.
fn search_slot(run: &[usize], bound: usize, x: usize, cmp: &mut CmpFn<'_>) -> (usize, u32) {
    let (mut lo, mut hi) = (0, bound);
    let mut used = 0;
    while lo < hi {
        let mid = (lo + hi) / 2;
        used += 1;
        if less(cmp, x, run[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, used)
}

/// Inserts `x` into the sorted `run` spending exactly `ceil(log2 k)`
/// comparisons, `k = run.len() + 1`.
///
/// A binary search over `k` slots needs only `floor(log2 k)` comparisons on
/// some paths when `k` is not a power of two; those paths are topped up with
/// repeat comparisons against the neighbour of the found slot.
pub fn binary_insert_by(run: &[usize], x: usize, cmp: &mut CmpFn<'_>) -> Vec<usize> {
    let budget = ceil_log2(run.len() as u64 + 1);
    let (slot, used) = search_slot(run, run.len(), x, cmp);
    let neighbour = if slot < run.len() { run[slot] } else { run.len().checked_sub(1).map(|i| run[i]).unwrap_or(x) };
    for _ in used..budget {
        cmp(x, neighbour);
    }
    let mut out = run.to_vec();
    out.insert(slot, x);
    out
}

pub fn binary_insert<C: Comparator>(run: &[usize], x: usize, cmp: &mut C) -> Vec<usize> {
    binary_insert_by(run, x, &mut |a, b| cmp.compare(a, b))
}

/// Binary insertion sort; always exactly `A_n` comparisons.
pub fn insertion_sort_by(ids: &[usize], cmp: &mut CmpFn<'_>) -> Vec<usize> {
    let mut run = Vec::with_capacity(ids.len());
    for &x in ids {
        run = binary_insert_by(&run, x, cmp);
    }
    run
}

pub fn insertion_sort<C: Comparator>(cmp: &mut C) -> Vec<usize> {
    let ids: Vec<usize> = (0..cmp.len()).collect();
    insertion_sort_by(&ids, &mut |a, b| cmp.compare(a, b))
}

/// Linear merge of two sorted runs, at most `m + n - 1` comparisons.
pub fn merge_runs_by(x: &[usize], y: &[usize], cmp: &mut CmpFn<'_>) -> Vec<usize> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if less(cmp, y[j], x[i]) {
            out.push(y[j]);
            j += 1;
        } else {
            out.push(x[i]);
            i += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

pub fn merge_runs<C: Comparator>(x: &[usize], y: &[usize], cmp: &mut C) -> Vec<usize> {
    merge_runs_by(x, y, &mut |a, b| cmp.compare(a, b))
}

/// Shape of the grouped mergesort: which runs get merged with which.
#[derive(Debug, Clone)]
pub enum MergeTree {
    Leaf(usize),
    Merge(Box<MergeTree>, Box<MergeTree>, usize),
}

impl MergeTree {
    pub fn size(&self) -> usize {
        match self {
            MergeTree::Leaf(_) => 1,
            MergeTree::Merge(_, _, s) => *s,
        }
    }

    fn merge(a: MergeTree, b: MergeTree) -> MergeTree {
        let s = a.size() + b.size();
        MergeTree::Merge(Box::new(a), Box::new(b), s)
    }

    /// Worst-case comparison count: every merge costs `m + n - 1`.
    pub fn worst_case(&self) -> u64 {
        match self {
            MergeTree::Leaf(_) => 0,
            MergeTree::Merge(a, b, s) => a.worst_case() + b.worst_case() + *s as u64 - 1,
        }
    }
}

/// Merge tree over positions `0..n`: blocks of sizes `2^{k_1} > 2^{k_2} > ...`
/// from the binary expansion of `n`, each sorted by pairwise rounds, then the
/// two shortest runs merged until one is left.
pub fn grouped_merge_tree(n: usize) -> Option<MergeTree> {
    if n == 0 {
        return None;
    }
    let mut runs: Vec<MergeTree> = Vec::new();
    let mut pos = 0;
    for bit in (0..usize::BITS).rev() {
        let size = 1usize << bit;
        if n & size == 0 {
            continue;
        }
        let mut level: Vec<MergeTree> = (pos..pos + size).map(MergeTree::Leaf).collect();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len() / 2);
            let mut it = level.into_iter();
            while let (Some(a), Some(b)) = (it.next(), it.next()) {
                next.push(MergeTree::merge(a, b));
            }
            level = next;
        }
        runs.push(level.pop().unwrap());
        pos += size;
    }
    while runs.len() > 1 {
        // stable: among equal sizes the earlier run goes first
        let mut order: Vec<usize> = (0..runs.len()).collect();
        order.sort_by_key(|&i| (runs[i].size(), i));
        let (i, j) = (order[0].min(order[1]), order[0].max(order[1]));
        let b = runs.remove(j);
        let a = runs.remove(i);
        runs.insert(i, MergeTree::merge(a, b));
    }
    runs.pop()
}

fn run_tree(tree: &MergeTree, ids: &[usize], cmp: &mut CmpFn<'_>) -> Vec<usize> {
    match tree {
        MergeTree::Leaf(p) => vec![ids[*p]],
        MergeTree::Merge(a, b, _) => {
            let x = run_tree(a, ids, cmp);
            let y = run_tree(b, ids, cmp);
            merge_runs_by(&x, &y, cmp)
        }
    }
}

pub fn merge_sort_grouped_by(ids: &[usize], cmp: &mut CmpFn<'_>) -> Vec<usize> {
    match grouped_merge_tree(ids.len()) {
        None => Vec::new(),
        Some(t) => run_tree(&t, ids, cmp),
    }
}

pub fn merge_sort_grouped<C: Comparator>(cmp: &mut C) -> Vec<usize> {
    let ids: Vec<usize> = (0..cmp.len()).collect();
    merge_sort_grouped_by(&ids, &mut |a, b| cmp.compare(a, b))
}

/// Keys (a permutation of `0..n`) on which every merge of the grouped
/// mergesort costs `m + n - 1`: at each merge the largest values alternate
/// between the two runs so both run out together.
pub fn grouped_worst_input(n: usize) -> Vec<u64> {
    fn assign(tree: &MergeTree, values: Vec<u64>, keys: &mut [u64]) {
        match tree {
            MergeTree::Leaf(p) => keys[*p] = values[0],
            MergeTree::Merge(a, b, _) => {
                let (mut na, mut nb) = (a.size(), b.size());
                let mut va = Vec::with_capacity(na);
                let mut vb = Vec::with_capacity(nb);
                let mut turn_a = true;
                for v in values.into_iter().rev() {
                    if (turn_a && na > 0) || nb == 0 {
                        va.push(v);
                        na -= 1;
                    } else {
                        vb.push(v);
                        nb -= 1;
                    }
                    turn_a = !turn_a;
                }
                va.reverse();
                vb.reverse();
                assign(a, va, keys);
                assign(b, vb, keys);
            }
        }
    }
    let mut keys = vec![0; n];
    if let Some(t) = grouped_merge_tree(n) {
        assign(&t, (0..n as u64).collect(), &mut keys);
    }
    keys
}

/// `t_k = (2^{k+1} + (-1)^k) / 3`: merge insertion inserts `b_{t_k}` down to
/// `b_{t_{k-1}+1}` in its `k`-th batch.
pub fn t_k(k: u32) -> u64 {
    let p = 1u64 << (k + 1);
    if k.is_multiple_of(2) {
        (p + 1) / 3
    } else {
        (p - 1) / 3
    }
}

/// Merge insertion (Ford-Johnson). At most `F(n)` comparisons.
pub fn merge_insertion_by(ids: &[usize], cmp: &mut CmpFn<'_>) -> Vec<usize> {
    let n = ids.len();
    if n <= 1 {
        return ids.to_vec();
    }
    let mut winners = Vec::with_capacity(n / 2);
    let mut partner: HashMap<usize, usize> = HashMap::with_capacity(n / 2);
    for pair in ids.chunks_exact(2) {
        let (x, y) = (pair[0], pair[1]);
        let (a, b) = if cmp(x, y) == Ordering::Greater { (x, y) } else { (y, x) };
        winners.push(a);
        partner.insert(a, b);
    }
    let sorted_a = merge_insertion_by(&winners, cmp);
    let m = sorted_a.len();
    // b_i pairs with a_i; an odd leftover becomes b_{m+1} with no partner
    let mut bs: Vec<usize> = sorted_a.iter().map(|a| partner[a]).collect();
    if n % 2 == 1 {
        bs.push(ids[n - 1]);
    }
    let mut chain = Vec::with_capacity(n);
    chain.push(bs[0]);
    chain.extend_from_slice(&sorted_a);
    let mut k = 2;
    let mut prev = t_k(1) as usize;
    while prev < bs.len() {
        let hi = (t_k(k) as usize).min(bs.len());
        for j in (prev + 1..=hi).rev() {
            let b = bs[j - 1];
            let bound = if j <= m { chain.iter().position(|&c| c == sorted_a[j - 1]).unwrap() } else { chain.len() };
            let (slot, _) = search_slot(&chain, bound, b, cmp);
            chain.insert(slot, b);
        }
        prev = hi;
        k += 1;
    }
    chain
}

pub fn merge_insertion_sort<C: Comparator>(cmp: &mut C) -> Vec<usize> {
    let ids: Vec<usize> = (0..cmp.len()).collect();
    merge_insertion_by(&ids, &mut |a, b| cmp.compare(a, b))
}

/// `A_n = n ceil(log2 n) - 2^{ceil(log2 n)} + 1`.
pub fn a_n(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let c = ceil_log2(n);
    n * c as u64 + 1 - (1u64 << c)
}

/// Worst case of the grouped mergesort for `n = 2^{l_1} + ... + 2^{l_s}`:
/// `1 - 2^{l_s} + sum (l_i + i - 1) 2^{l_i}`.
pub fn b_n(n: u64) -> u64 {
    let ls = binary_exponents(n);
    if ls.is_empty() {
        return 0;
    }
    let sum: u64 = ls.iter().enumerate().map(|(i, &l)| (l as u64 + i as u64) << l).sum();
    1 + sum - (1u64 << ls[ls.len() - 1])
}

/// The same sum with `1 - 2^s` (`s` = number of binary digits set) as the
/// leading term. Kept for comparison with [`b_n`]; it agrees only when the
/// smallest block has size `2^s`.
pub fn b_n_digit_count_variant(n: u64) -> i64 {
    let ls = binary_exponents(n);
    if ls.is_empty() {
        return 0;
    }
    let sum: i64 = ls.iter().enumerate().map(|(i, &l)| (l as i64 + i as i64) << l).sum();
    1 - (1i64 << ls.len()) + sum
}

fn binary_exponents(n: u64) -> Vec<u32> {
    (0..64).rev().filter(|b| n & (1u64 << b) != 0).collect()
}

/// `F(n) = sum_{k=2}^{n} ceil(log2(3k/4))`.
pub fn f_n(n: u64) -> u64 {
    (2..=n).map(|k| ceil_log2(3 * k) as u64 - 2).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortBudget {
    pub n: u64,
    pub info_lower: u64,
    pub a_n: u64,
    pub b_n: u64,
    pub f_n: u64,
}

pub fn sort_budgets(n: u64) -> SortBudget {
    SortBudget { n, info_lower: ceil_log2_factorial(n), a_n: a_n(n), b_n: b_n(n), f_n: f_n(n) }
}
