//! Exact minimum set cover over a universe of at most 64 elements.

/// Indices of a smallest family of `sets` whose union is `universe`, or
/// `None` when no cover exists.
pub fn min_cover(universe: u64, sets: &[u64]) -> Option<Vec<usize>> {
    if universe == 0 {
        return Some(Vec::new());
    }
    // drop empty sets and sets contained in another one
    let mut cands: Vec<(usize, u64)> = Vec::new();
    for (i, &s) in sets.iter().enumerate() {
        let s = s & universe;
        if s == 0 {
            continue;
        }
        let dominated = sets.iter().enumerate().any(|(j, &t)| {
            let t = t & universe;
            j != i && s & !t == 0 && (s != t || j < i)
        });
        if !dominated {
            cands.push((i, s));
        }
    }
    let reach = cands.iter().fold(0, |acc, &(_, s)| acc | s);
    if reach & universe != universe {
        return None;
    }
    let mut best = greedy(universe, &cands);
    let max_size = cands
        .iter()
        .map(|&(_, s)| s.count_ones())
        .max()
        .unwrap_or(1);
    let mut chosen = Vec::new();
    search(universe, &cands, max_size, &mut chosen, &mut best);
    Some(best)
}

fn greedy(universe: u64, cands: &[(usize, u64)]) -> Vec<usize> {
    let mut left = universe;
    let mut out = Vec::new();
    while left != 0 {
        let &(i, s) = cands
            .iter()
            .max_by_key(|&&(i, s)| ((s & left).count_ones(), std::cmp::Reverse(i)))
            .expect("cover exists");
        out.push(i);
        left &= !s;
    }
    out
}

fn search(
    left: u64,
    cands: &[(usize, u64)],
    max_size: u32,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if left == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let lower = left.count_ones().div_ceil(max_size) as usize;
    if chosen.len() + lower >= best.len() {
        return;
    }
    // branch on the element with the fewest covering sets
    let mut pivot = 0;
    let mut fewest = usize::MAX;
    let mut bits = left;
    while bits != 0 {
        let e = bits.trailing_zeros();
        bits &= bits - 1;
        let c = cands.iter().filter(|&&(_, s)| s >> e & 1 == 1).count();
        if c < fewest {
            fewest = c;
            pivot = e;
        }
    }
    let mut options: Vec<&(usize, u64)> = cands
        .iter()
        .filter(|&&(_, s)| s >> pivot & 1 == 1)
        .collect();
    options.sort_by_key(|&&(_, s)| std::cmp::Reverse((s & left).count_ones()));
    for &(i, s) in options {
        chosen.push(i);
        search(left & !s, cands, max_size, chosen, best);
        chosen.pop();
    }
}
