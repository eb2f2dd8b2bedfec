//! Independent oracles. Nothing here calls into the library's deciders.
#![allow(dead_code)]

use std::collections::HashMap;

use minorlab::Graph;

pub fn edges(g: &Graph) -> Vec<(usize, usize)> {
    (0..g.n())
        .flat_map(|a| g.neighbors(a).iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
        .collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

pub fn component_count(n: usize, es: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut c = n;
    for &(a, b) in es {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            c -= 1;
        }
    }
    c
}

/// `e − n + c`.
pub fn cyclomatic(n: usize, es: &[(usize, usize)]) -> usize {
    es.len() + component_count(n, es) - n
}

pub fn is_forest(n: usize, es: &[(usize, usize)]) -> bool {
    cyclomatic(n, es) == 0
}

pub fn is_bipartite(n: usize, es: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in es {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                match side[u] {
                    None => {
                        side[u] = Some(!side[v].unwrap());
                        stack.push(u);
                    }
                    Some(x) if x == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn has_triangle(n: usize, es: &[(usize, usize)]) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in es {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    es.iter().any(|&(a, b)| (0..n).any(|c| adj[a][c] && adj[b][c]))
}

/// Membership by property name, for the shipped monotone properties.
pub fn member(name: &str, n: usize, es: &[(usize, usize)]) -> bool {
    match name {
        "bipartite" => is_bipartite(n, es),
        "acyclic" => is_forest(n, es),
        "at-most-one-cycle" => cyclomatic(n, es) <= 1,
        "triangle-free" => !has_triangle(n, es),
        other => panic!("no oracle for {other}"),
    }
}

/// Exact treedepth by `td(S) = 1 + min_v td(S − v)` on connected `S`,
/// memoised over vertex bitmasks. At most 20 vertices.
pub fn treedepth(n: usize, es: &[(usize, usize)]) -> usize {
    assert!(n <= 20);
    let mut adj = vec![0u32; n];
    for &(a, b) in es {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut memo = HashMap::new();
    td_set(&adj, (1u32 << n) - 1, &mut memo) * (n > 0) as usize
}

fn comps(adj: &[u32], set: u32) -> Vec<u32> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            for v in 0..adj.len() {
                if comp >> v & 1 == 1 {
                    grown |= adj[v] & set;
                }
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

fn td_set(adj: &[u32], set: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if set == 0 {
        return 0;
    }
    if let Some(&t) = memo.get(&set) {
        return t;
    }
    let parts = comps(adj, set);
    let t = if parts.len() > 1 {
        parts.into_iter().map(|c| td_set(adj, c, memo)).max().unwrap()
    } else {
        (0..adj.len())
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| 1 + td_set(adj, set & !(1 << v), memo))
            .min()
            .unwrap()
    };
    memo.insert(set, t);
    t
}

/// Spanning-tree count by Kirchhoff's theorem, with fraction-free
/// elimination on the reduced Laplacian.
pub fn spanning_tree_count(n: usize, es: &[(usize, usize)]) -> i128 {
    if n <= 1 {
        return 1;
    }
    let k = n - 1;
    let mut m = vec![vec![0i128; k]; k];
    for &(a, b) in es {
        for (x, y) in [(a, b), (b, a)] {
            if x < k {
                m[x][x] += 1;
                if y < k {
                    m[x][y] -= 1;
                }
            }
        }
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

/// Connected graphs on `n` vertices up to isomorphism, OEIS A001349.
pub const CONNECTED_COUNTS: [usize; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];
