//! Shared test oracles: a brute-force block-system membership check that
//! takes one representative permutation of a type and tries every
//! partition of the points into blocks, independent of the grouping
//! search it validates.

/// One permutation with the given cycle lengths, as an image table on
/// `0..n`.
pub fn representative(parts: &[u32]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0usize;
    for &len in parts {
        let len = len as usize;
        for i in 0..len {
            perm.push(start + (i + 1) % len);
        }
        start += len;
    }
    perm
}

/// All partitions of `0..n` into blocks of size `b`, as block-id tables.
pub fn block_partitions(n: usize, b: usize) -> Vec<Vec<usize>> {
    assert_eq!(n % b, 0);
    let mut out = Vec::new();
    let mut ids = vec![usize::MAX; n];
    fill(&mut ids, 0, b, &mut out);
    out
}

fn fill(ids: &mut Vec<usize>, next_id: usize, b: usize, out: &mut Vec<Vec<usize>>) {
    let Some(anchor) = ids.iter().position(|&x| x == usize::MAX) else {
        out.push(ids.clone());
        return;
    };
    ids[anchor] = next_id;
    let free: Vec<usize> = (anchor + 1..ids.len()).filter(|&p| ids[p] == usize::MAX).collect();
    let mut pick = vec![0usize; b - 1];
    choose(&free, 0, &mut pick, 0, &mut |chosen: &[usize]| {
        for &p in chosen {
            ids[p] = next_id;
        }
        fill(ids, next_id + 1, b, out);
        for &p in chosen {
            ids[p] = usize::MAX;
        }
    });
    ids[anchor] = usize::MAX;
}

fn choose(pool: &[usize], from: usize, pick: &mut Vec<usize>, depth: usize, f: &mut impl FnMut(&[usize])) {
    if depth == pick.len() {
        let chosen: Vec<usize> = pick.clone();
        f(&chosen);
        return;
    }
    for i in from..pool.len() {
        pick[depth] = pool[i];
        choose(pool, i + 1, pick, depth + 1, f);
    }
}

fn preserves(perm: &[usize], ids: &[usize], num_blocks: usize) -> bool {
    let mut image = vec![usize::MAX; num_blocks];
    for (p, &q) in perm.iter().enumerate() {
        let (a, b) = (ids[p], ids[q]);
        if image[a] == usize::MAX {
            image[a] = b;
        } else if image[a] != b {
            return false;
        }
    }
    true
}

/// Ground truth for imprimitive membership: does any block system of
/// `n/b` blocks of size `b` survive the representative permutation?
pub fn oracle_in_imprimitive(parts: &[u32], b: u32) -> bool {
    let n: u32 = parts.iter().sum();
    let perm = representative(parts);
    let m = (n / b) as usize;
    block_partitions(n as usize, b as usize)
        .iter()
        .any(|ids| preserves(&perm, ids, m))
}
