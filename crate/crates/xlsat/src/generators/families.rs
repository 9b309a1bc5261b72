//! Exact linear regular uniform families from incidence structures.
//!
//! Three constructions cover both residue classes k = 0 and k = 1
//! (mod l) of the allowed widths: complete graphs give l = 2 with
//! k = m - 1, projective planes give the block-design diagonal k = l,
//! and the point/line duality of the binary 3-space gives l = 3, k = 7.

use crate::formula::{Clause, Formula};

use super::GenError;

/// Vertices of the complete graph on k+1 vertices as clauses over the
/// edge variables: monotone, exact linear, 2-regular, k-uniform, with
/// m = k+1 and n = k(k+1)/2. Edge variables are numbered in
/// lexicographic endpoint order.
pub fn gen_complete_graph(k: u32) -> Formula {
    assert!(k >= 2, "a complete-graph instance needs k >= 2");
    let vertices = k + 1;
    let mut edge_id = std::collections::HashMap::new();
    let mut next = 1u32;
    for a in 1..=vertices {
        for b in a + 1..=vertices {
            edge_id.insert((a, b), next);
            next += 1;
        }
    }
    let clauses = (1..=vertices)
        .map(|u| {
            let vars = (1..=vertices)
                .filter(|&w| w != u)
                .map(|w| edge_id[&(u.min(w), u.max(w))]);
            Clause::positive(vars).expect("edge variables are distinct")
        })
        .collect();
    Formula::with_var_count(vertices * k / 2, clauses)
        .expect("every edge touches two vertices")
}

/// The seven lines of the smallest projective plane over its seven
/// point variables: monotone, exact linear, 3-regular, 3-uniform.
pub fn gen_fano() -> Formula {
    let lines: [[u32; 3]; 7] = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    let clauses = lines
        .iter()
        .map(|line| Clause::positive(line.iter().copied()).expect("line points are distinct"))
        .collect();
    Formula::with_var_count(7, clauses).expect("every point lies on a line")
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let q = u64::from(q);
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Lines of the projective plane of prime order q as clauses over the
/// q^2+q+1 point variables: monotone, exact linear, (q+1)-regular,
/// (q+1)-uniform with m = n. Points and lines are enumerated as the
/// lexicographically-normalized homogeneous triples over GF(q).
pub fn gen_projective_plane(q: u32) -> Result<Formula, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime { q });
    }
    let mut points: Vec<[u32; 3]> = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let leading_one =
                    (x == 1) || (x == 0 && y == 1) || (x == 0 && y == 0 && z == 1);
                if leading_one {
                    points.push([x, y, z]);
                }
            }
        }
    }
    debug_assert_eq!(points.len() as u32, q * q + q + 1);
    let clauses = points
        .iter()
        .map(|line| {
            let vars = points.iter().enumerate().filter_map(|(idx, p)| {
                let dot = (u64::from(line[0]) * u64::from(p[0])
                    + u64::from(line[1]) * u64::from(p[1])
                    + u64::from(line[2]) * u64::from(p[2]))
                    % u64::from(q);
                (dot == 0).then_some(idx as u32 + 1)
            });
            Clause::positive(vars).expect("incident points are distinct")
        })
        .collect();
    Ok(Formula::with_var_count(points.len() as u32, clauses)
        .expect("every point is incident to a line"))
}

/// Duality construction on the projective 3-space over GF(2): clauses
/// are the 15 points, variables the 35 lines, and the clause of a point
/// holds the 7 lines through it. Monotone, exact linear, 3-regular,
/// 7-uniform with m = 15, n = 35. Lines are the triples {u, v, u xor v}
/// of nonzero 4-bit vectors, numbered in lexicographic order.
pub fn gen_pg32() -> Formula {
    let mut lines: Vec<[u32; 3]> = Vec::new();
    for u in 1u32..=15 {
        for v in u + 1..=15 {
            let w = u ^ v;
            if w > v {
                lines.push([u, v, w]);
            }
        }
    }
    debug_assert_eq!(lines.len(), 35);
    let clauses = (1u32..=15)
        .map(|point| {
            let vars = lines
                .iter()
                .enumerate()
                .filter_map(|(idx, line)| line.contains(&point).then_some(idx as u32 + 1));
            Clause::positive(vars).expect("lines through a point are distinct")
        })
        .collect();
    Formula::with_var_count(35, clauses).expect("every line passes through a point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{audit_theorem3, classify, corollary1_invariant};

    #[test]
    fn complete_graph_k3_is_the_k4_formula() {
        let f = gen_complete_graph(3);
        assert_eq!(f.n(), 6);
        assert_eq!(f.m(), 4);
        let p = classify(&f);
        assert!(p.monotone && p.exact_linear);
        assert_eq!(p.regularity, Some(2));
        assert_eq!(p.uniformity, Some(3));
        // clause of vertex 1 is the first three edge variables
        let vars: Vec<u32> = f.clause(0).vars().map(|v| v.index()).collect();
        assert_eq!(vars, vec![1, 2, 3]);
    }

    #[test]
    fn complete_graph_k2_is_the_triangle() {
        let f = gen_complete_graph(2);
        assert_eq!((f.n(), f.m()), (3, 3));
        let p = classify(&f);
        assert_eq!(p.regularity, Some(2));
        assert_eq!(p.uniformity, Some(2));
    }

    #[test]
    fn complete_graph_k5_passes_the_parameter_audit() {
        let f = gen_complete_graph(5);
        assert_eq!((f.m(), f.n()), (6, 15));
        assert!(audit_theorem3(&f).unwrap().pass);
    }

    #[test]
    fn fano_profile() {
        let f = gen_fano();
        let p = classify(&f);
        assert!(p.monotone && p.exact_linear);
        assert_eq!(p.regularity, Some(3));
        assert_eq!(p.uniformity, Some(3));
        assert_eq!((p.m, p.n), (7, 7));
        assert!(audit_theorem3(&f).unwrap().pass);
        assert!(corollary1_invariant(&f).unwrap().pass);
    }

    #[test]
    fn projective_plane_orders() {
        let f2 = gen_projective_plane(2).unwrap();
        let fano = gen_fano();
        assert_eq!(classify(&f2), classify(&fano));

        let f3 = gen_projective_plane(3).unwrap();
        let p = classify(&f3);
        assert_eq!((p.m, p.n), (13, 13));
        assert_eq!(p.regularity, Some(4));
        assert_eq!(p.uniformity, Some(4));
        assert!(audit_theorem3(&f3).unwrap().pass);
    }

    #[test]
    fn projective_plane_order_three_is_unsat_by_the_residue_rule() {
        use crate::engine::{decide, EngineConfig, Method, Status, Strategy};
        let f = gen_projective_plane(3).unwrap();
        let v = decide(&f, Strategy::Auto, None, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Unsat);
        assert_eq!(v.method, Method::Theorem5);
    }

    #[test]
    fn projective_plane_rejects_composite_order() {
        assert_eq!(
            gen_projective_plane(4).unwrap_err(),
            GenError::NotPrime { q: 4 }
        );
        assert_eq!(
            gen_projective_plane(1).unwrap_err(),
            GenError::NotPrime { q: 1 }
        );
    }

    #[test]
    fn pg32_profile() {
        let f = gen_pg32();
        let p = classify(&f);
        assert!(p.monotone && p.exact_linear);
        assert_eq!(p.regularity, Some(3));
        assert_eq!(p.uniformity, Some(7));
        assert_eq!((p.m, p.n), (15, 35));
        assert!(audit_theorem3(&f).unwrap().pass);
        assert!(corollary1_invariant(&f).unwrap().pass);
    }

    #[test]
    fn pg32_no_fast_rule_applies() {
        use crate::engine::fast_unsat_rules;
        let f = gen_pg32();
        assert!(fast_unsat_rules(&f, &classify(&f)).is_none());
    }
}
