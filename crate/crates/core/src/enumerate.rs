//! Enumeration of fillings and of standard tableaux.
//!
//! Fillings are produced in lexicographic order of the entry sequence read
//! in column-wise cell order (down the first column, then the second, ...).
//! Index `k` of that order is addressable directly through [`unrank_filling`],
//! so the `n!` fillings can be cut into disjoint index ranges for parallel
//! workers and every worker sees the same fillings regardless of scheduling.

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableau::Tableau;

/// Largest size whose filling count still fits in a `u64` index.
pub const MAX_INDEXED: usize = 20;

pub fn filling_count(n: usize) -> Result<u64> {
    if n > MAX_INDEXED {
        return Err(Error::Capacity(format!("{n}! fillings cannot be indexed in 64 bits")));
    }
    Ok((1..=n as u64).product())
}

/// Lexicographic successor; returns false after the last permutation.
pub(crate) fn next_permutation(seq: &mut [usize]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// The `k`-th permutation of `1..=n` in lexicographic order.
pub(crate) fn unrank_permutation(n: usize, mut k: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f: u64 = (1..=i as u64).product();
        let q = (k / f) as usize;
        k %= f;
        out.push(pool.remove(q));
    }
    out
}

/// Writes a column-order entry sequence into row-major storage.
pub(crate) fn scatter(d: &Diagram, seq: &[usize], out: &mut [usize]) {
    for (&idx, &e) in d.column_major().iter().zip(seq) {
        out[idx] = e;
    }
}

pub fn unrank_filling(p: &Partition, k: u64) -> Result<Tableau> {
    let total = filling_count(p.size())?;
    if k >= total {
        return Err(Error::domain(format!("filling index {k} out of range 0..{total}")));
    }
    let d = Diagram::new(p);
    let seq = unrank_permutation(p.size(), k);
    let mut entries = vec![0; p.size()];
    scatter(&d, &seq, &mut entries);
    Ok(Tableau::from_raw(p.clone(), entries))
}

/// Calls `f` with the row-major entries of fillings `start..end`, reusing one
/// buffer. This is the hot path of exhaustive aggregation.
pub(crate) fn for_each_filling(d: &Diagram, start: u64, end: u64, mut f: impl FnMut(&[usize])) {
    if start >= end {
        return;
    }
    let n = d.size();
    let mut seq = unrank_permutation(n, start);
    let mut buf = vec![0; n];
    let mut k = start;
    loop {
        scatter(d, &seq, &mut buf);
        f(&buf);
        k += 1;
        if k >= end || !next_permutation(&mut seq) {
            break;
        }
    }
}

/// Iterator over the fillings with indices in a half-open range.
pub struct Fillings {
    diagram: Diagram,
    seq: Vec<usize>,
    remaining: u64,
}

impl Iterator for Fillings {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.remaining == 0 {
            return None;
        }
        let mut entries = vec![0; self.seq.len()];
        scatter(&self.diagram, &self.seq, &mut entries);
        self.remaining -= 1;
        if self.remaining > 0 {
            next_permutation(&mut self.seq);
        }
        Some(Tableau::from_raw(self.diagram.shape().clone(), entries))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

pub fn enumerate_tableaux(p: &Partition) -> Result<Fillings> {
    fillings_range(p, 0, filling_count(p.size())?)
}

pub fn fillings_range(p: &Partition, start: u64, end: u64) -> Result<Fillings> {
    let total = filling_count(p.size())?;
    if start > end || end > total {
        return Err(Error::domain(format!("range {start}..{end} not inside 0..{total}")));
    }
    Ok(Fillings {
        diagram: Diagram::new(p),
        seq: if start < total { unrank_permutation(p.size(), start) } else { Vec::new() },
        remaining: end - start,
    })
}

/// All standard tableaux of shape `p`. Entries `1, 2, ...` are placed one at
/// a time at the end of some row; rows are tried top to bottom, so the output
/// is lexicographic in the sequence of row indices receiving `1, 2, ..., n`.
pub fn enumerate_syt(p: &Partition) -> Vec<Tableau> {
    fn rec(p: &Partition, d: &Diagram, fill: &mut [usize], entries: &mut [usize], next: usize, out: &mut Vec<Tableau>) {
        if next > p.size() {
            out.push(Tableau::from_raw(p.clone(), entries.to_vec()));
            return;
        }
        for i in 0..p.rows() {
            let addable = fill[i] < p.parts()[i] && (i == 0 || fill[i - 1] > fill[i]);
            if !addable {
                continue;
            }
            let idx = d.index(crate::partition::Cell::new(i + 1, fill[i] + 1)).unwrap();
            entries[idx] = next;
            fill[i] += 1;
            rec(p, d, fill, entries, next + 1, out);
            fill[i] -= 1;
            entries[idx] = 0;
        }
    }
    let d = Diagram::new(p);
    let mut out = Vec::new();
    rec(p, &d, &mut vec![0; p.rows()], &mut vec![0; p.size()], 1, &mut out);
    out
}
