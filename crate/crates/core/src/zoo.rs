//! Constructors for the named binary matroids.
//!
//! Label conventions: `s8` uses `1..8`; spikes use legs `x_i`, `y_i` and tip
//! `t`; graphic matroids use edge positions `1..m` unless built from a named
//! graph (`K_n` labels edges `u-v`); projective and affine geometries label
//! each point by its coordinate string `x_0 x_1 .. x_{r-1}`.

use crate::error::{MatroidError, Result};
use crate::gf2::{Gf2Matrix, MAX_ELEMENTS};
use crate::matroid::BinaryMatroid;

fn param(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(MatroidError::InvalidParameter(msg()))
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn from_columns(rows: usize, columns: &[u64], labels: Vec<String>) -> Result<BinaryMatroid> {
    param(columns.len() <= MAX_ELEMENTS, || format!("more than {MAX_ELEMENTS} elements"))?;
    BinaryMatroid::new(Gf2Matrix::from_columns(rows, columns), labels)
}

fn coordinate_label(v: u64, r: usize) -> String {
    (0..r).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// `U_{1,m}`: `m` parallel non-loop elements.
pub fn uniform_rank1(m: usize) -> Result<BinaryMatroid> {
    param(m >= 1, || "U_{1,m} needs m >= 1".into())?;
    from_columns(1, &vec![1; m], numbered(m))
}

/// `U_{0,1}`: a single loop.
pub fn loop_matroid() -> BinaryMatroid {
    BinaryMatroid::from_matrix(Gf2Matrix::zeros(0, 1))
}

/// `U_{1,1}`: a single coloop.
pub fn coloop() -> BinaryMatroid {
    BinaryMatroid::from_matrix(Gf2Matrix::identity(1))
}

/// `U_{n-1,n}`: a single circuit of size `n`.
pub fn circuit(n: usize) -> Result<BinaryMatroid> {
    param(n >= 1, || "a circuit needs at least one element".into())?;
    Ok(uniform_rank1(n)?.dual())
}

/// The free matroid on `n` elements.
pub fn free(n: usize) -> Result<BinaryMatroid> {
    param(n <= MAX_ELEMENTS, || format!("more than {MAX_ELEMENTS} elements"))?;
    Ok(BinaryMatroid::from_matrix(Gf2Matrix::identity(n)))
}

/// The matroid `S8`, elements `1..8`.
pub fn s8() -> BinaryMatroid {
    BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&[
        "10001110",
        "01001111",
        "00100011",
        "00011001",
    ]))
}

fn spike_columns(r: usize) -> Vec<u64> {
    let all = (1u64 << r) - 1;
    (0..r).map(|i| 1u64 << i).chain((0..r).map(|i| all ^ (1 << i))).collect()
}

fn spike_labels(r: usize) -> Vec<String> {
    (1..=r)
        .map(|i| format!("x{i}"))
        .chain((1..=r).map(|i| format!("y{i}")))
        .collect()
}

/// Tipless binary `r`-spike `[I_r | J_r - I_r]`.
pub fn tipless_spike(r: usize) -> Result<BinaryMatroid> {
    param((1..=32).contains(&r), || format!("spike rank {r} outside 1..=32"))?;
    from_columns(r, &spike_columns(r), spike_labels(r))
}

/// Tipped binary `r`-spike: the tipless spike plus the all-ones column `t`.
pub fn tipped_spike(r: usize) -> Result<BinaryMatroid> {
    param((1..=31).contains(&r), || format!("spike rank {r} outside 1..=31"))?;
    let mut cols = spike_columns(r);
    cols.push((1u64 << r) - 1);
    let mut labels = spike_labels(r);
    labels.push("t".into());
    from_columns(r, &cols, labels)
}

/// Cycle matroid from the GF(2) vertex-edge incidence matrix. Vertices are
/// `0..`; an edge `(u, u)` is a loop.
pub fn graphic(edges: &[(usize, usize)]) -> Result<BinaryMatroid> {
    graphic_labeled(edges, numbered(edges.len()))
}

pub fn graphic_labeled(edges: &[(usize, usize)], labels: Vec<String>) -> Result<BinaryMatroid> {
    param(edges.len() <= MAX_ELEMENTS, || format!("more than {MAX_ELEMENTS} edges"))?;
    let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut m = Gf2Matrix::zeros(vertices, edges.len());
    for (j, &(u, v)) in edges.iter().enumerate() {
        if u != v {
            m.set(u, j, true);
            m.set(v, j, true);
        }
    }
    BinaryMatroid::new(m, labels)
}

/// Bond matroid `M*(G)`.
pub fn cographic(edges: &[(usize, usize)]) -> Result<BinaryMatroid> {
    Ok(graphic(edges)?.dual())
}

pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// `M(K_n)`, edges labelled `u-v` with vertices `1..n`.
pub fn complete(n: usize) -> Result<BinaryMatroid> {
    param(n >= 1, || "K_n needs n >= 1".into())?;
    let edges = complete_graph_edges(n);
    let labels = edges.iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    graphic_labeled(&edges, labels)
}

/// `M*(K_n)`.
pub fn complete_dual(n: usize) -> Result<BinaryMatroid> {
    Ok(complete(n)?.dual())
}

/// `M(K_{a,b})`, edges labelled `a_i-b_j`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<BinaryMatroid> {
    param(a >= 1 && b >= 1, || "K_{a,b} needs a, b >= 1".into())?;
    let edges: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    let labels = (0..a)
        .flat_map(|i| (0..b).map(move |j| format!("a{}-b{}", i + 1, j + 1)))
        .collect();
    graphic_labeled(&edges, labels)
}

/// The prism `K_3 x K_2`: triangles `{1,2,3}`, `{4,5,6}` and rungs `7,8,9`.
pub fn prism() -> BinaryMatroid {
    graphic(&[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
        .expect("fixed small graph")
}

/// `R_10 = [I_5 | B]` with `B` the circulant whose first row is `1 1 0 0 1`.
pub fn r10() -> BinaryMatroid {
    BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&[
        "1000011001",
        "0100011100",
        "0010001110",
        "0001000111",
        "0000110011",
    ]))
}

/// `PG(r-1, 2)`: every non-zero vector of `GF(2)^r`.
pub fn pg(r: usize) -> Result<BinaryMatroid> {
    param((1..=6).contains(&r), || format!("PG rank {r} outside 1..=6"))?;
    let cols: Vec<u64> = (1..1u64 << r).collect();
    let labels = cols.iter().map(|&v| coordinate_label(v, r)).collect();
    from_columns(r, &cols, labels)
}

/// Points of `AG(r-1, 2)` as column words: the vectors with `x_0 = 1`.
pub fn ag_points(r: usize) -> Vec<u64> {
    (1..1u64 << r).filter(|v| v & 1 == 1).collect()
}

/// `AG(r-1, 2)`: `PG(r-1, 2)` minus the hyperplane `x_0 = 0`.
pub fn ag(r: usize) -> Result<BinaryMatroid> {
    param((1..=7).contains(&r), || format!("AG rank {r} outside 1..=7"))?;
    let cols = ag_points(r);
    let labels = cols.iter().map(|&v| coordinate_label(v, r)).collect();
    from_columns(r, &cols, labels)
}

/// The point added by [`ag_plus_e`]: the lexicographically least coordinate
/// string on the removed hyperplane, `0..01`.
pub fn ag_extension_point(r: usize) -> u64 {
    1u64 << (r - 1)
}

/// `AG(r-1, 2) + e`, with `e` the last element.
pub fn ag_plus_e(r: usize) -> Result<BinaryMatroid> {
    param((2..=6).contains(&r), || format!("AG+e rank {r} outside 2..=6"))?;
    ag_plus_point(r, ag_extension_point(r))
}

/// `AG(r-1, 2)` extended by an arbitrary point `e` off the affine part.
pub fn ag_plus_point(r: usize, e: u64) -> Result<BinaryMatroid> {
    param(e != 0 && e & 1 == 0 && e >> r == 0, || format!("{e:#b} is not on the removed hyperplane"))?;
    let mut cols = ag_points(r);
    cols.push(e);
    let labels = cols.iter().map(|&v| coordinate_label(v, r)).collect();
    from_columns(r, &cols, labels)
}

/// `N_5`: a triangle `{a, b, c}` with `d` parallel to `a` and `e` parallel to `b`.
pub fn n5() -> BinaryMatroid {
    from_columns(2, &[0b01, 0b10, 0b11, 0b01, 0b10], ["a", "b", "c", "d", "e"].map(String::from).to_vec())
        .expect("fixed small matroid")
}

/// The Fano plane `F_7 = PG(2, 2)`.
pub fn f7() -> BinaryMatroid {
    pg(3).expect("rank 3 is in range")
}

pub fn f7_dual() -> BinaryMatroid {
    f7().dual()
}

fn parse_num(s: &str, spec: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| MatroidError::InvalidParameter(format!("bad number {s:?} in {spec:?}")))
}

/// Builds a matroid from a name such as `s8`, `spike:4:tipless`, `K:5`,
/// `K*:5`, `Kb:3,3`, `r10`, `ag:4`, `ag+e:4`, `n5`, `pg:3`, `u1:6`, `f7`,
/// `f7*`, `loop`, `coloop`, `prism`, `circuit:5`, `free:3` or
/// `dual:<name>`.
pub fn make(spec: &str) -> Result<BinaryMatroid> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("dual:") {
        return Ok(make(inner)?.dual());
    }
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    let need = || {
        arg.ok_or_else(|| MatroidError::InvalidParameter(format!("{spec:?} needs a parameter")))
    };
    match head {
        "s8" => Ok(s8()),
        "r10" => Ok(r10()),
        "n5" => Ok(n5()),
        "f7" => Ok(f7()),
        "f7*" => Ok(f7_dual()),
        "loop" | "u01" => Ok(loop_matroid()),
        "coloop" => Ok(coloop()),
        "prism" => Ok(prism()),
        "K" => complete(parse_num(need()?, spec)?),
        "K*" => complete_dual(parse_num(need()?, spec)?),
        "Kb" => {
            let (a, b) = need()?
                .split_once(',')
                .ok_or_else(|| MatroidError::InvalidParameter(format!("{spec:?}: expected Kb:a,b")))?;
            complete_bipartite(parse_num(a, spec)?, parse_num(b, spec)?)
        }
        "ag" => ag(parse_num(need()?, spec)?),
        "ag+e" => ag_plus_e(parse_num(need()?, spec)?),
        "pg" => pg(parse_num(need()?, spec)?),
        "u1" => uniform_rank1(parse_num(need()?, spec)?),
        "circuit" => circuit(parse_num(need()?, spec)?),
        "free" => free(parse_num(need()?, spec)?),
        "spike" => {
            let a = need()?;
            let (r, kind) = a.split_once(':').unwrap_or((a, "tipless"));
            let r = parse_num(r, spec)?;
            match kind {
                "tipless" => tipless_spike(r),
                "tipped" => tipped_spike(r),
                other => Err(MatroidError::InvalidParameter(format!("unknown spike kind {other:?}"))),
            }
        }
        _ => Err(MatroidError::InvalidParameter(format!("unknown matroid name {spec:?}"))),
    }
}
