use super::diagram::{ArcLabel, LinkDiagram};

/// Closure of a braid on `strands` strands. Generator `k` (1-based) is a
/// positive crossing between positions `k` and `k+1`, `-k` its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> LinkDiagram {
    let mut cur: Vec<ArcLabel> = (1..=strands as ArcLabel).collect();
    let mut next = strands as ArcLabel + 1;
    let mut pd = Vec::with_capacity(word.len());
    for &g in word {
        let k = g.unsigned_abs() as usize;
        assert!(k >= 1 && k < strands, "generator {g} out of range");
        let (l, r) = (cur[k - 1], cur[k]);
        let (nl, nr) = (next, next + 1);
        next += 2;
        if g > 0 {
            pd.push([r, nr, nl, l]);
        } else {
            pd.push([l, r, nr, nl]);
        }
        cur[k - 1] = nl;
        cur[k] = nr;
    }
    let mut loops = Vec::new();
    for (i, &c) in cur.iter().enumerate() {
        let start = i as ArcLabel + 1;
        if c == start {
            loops.push(start);
        } else {
            for t in pd.iter_mut() {
                for a in t.iter_mut() {
                    if *a == c {
                        *a = start;
                    }
                }
            }
        }
    }
    // compact labels to 1..=m
    let mut labels: Vec<ArcLabel> = pd.iter().flatten().copied().chain(loops.iter().copied()).collect();
    labels.sort_unstable();
    labels.dedup();
    let relabel = |a: ArcLabel| labels.binary_search(&a).unwrap() as ArcLabel + 1;
    let pd = pd.iter().map(|t| [relabel(t[0]), relabel(t[1]), relabel(t[2]), relabel(t[3])]).collect();
    let loops = loops.iter().map(|&a| relabel(a)).collect();
    LinkDiagram::new(None, pd, loops).expect("braid closures are valid diagrams")
}
