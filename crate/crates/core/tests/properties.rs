mod common;

use common::*;
use latcount_core::evaluate::specialize_count_todd;
use latcount_core::genfun::generating_function;
use latcount_core::oracle::{brute_count, indicator_identity_check, lattice_points, IntBox};
use latcount_core::polyhedron::is_polytope;
use latcount_core::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(lo..=hi, rows * cols)
        .prop_map(move |v| IntMatrix::new(rows, cols, v.into_iter().map(Int::from).collect()).unwrap())
}

fn square(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(|n| matrix(n, n, -5, 5))
}

fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

fn in_cone(gens: &IntMatrix, x: &[Rat]) -> bool {
    gens.solve(x).unwrap().iter().all(|t| !t.is_negative())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjugate_identity(a in square(5)) {
        let n = a.rows();
        prop_assert_eq!(a.mul(&a.adjugate()), IntMatrix::identity(n).scale(&a.det()));
    }

    #[test]
    fn det_is_multiplicative((a, b) in (1..=4usize).prop_flat_map(|n| (matrix(n, n, -4, 4), matrix(n, n, -4, 4)))) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn snf_reconstructs((r, c) in (1..=5usize, 1..=5usize), seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), r, c, -5, 5);
        let s = snf(&a);
        prop_assert_eq!(s.p.mul(&s.d_matrix()).mul(&s.q), a.clone());
        let mut prod = Int::one();
        for k in 1..=s.rank() {
            prod *= &s.diag[k - 1];
            prop_assert_eq!(&prod, &delta_stats(&a, k).delta_gcd);
        }
    }

    #[test]
    fn hnf_reconstructs(a in (1..=4usize).prop_flat_map(|n| (n..=6).prop_flat_map(move |m| matrix(m, n, -5, 5)))) {
        match hnf(&a) {
            Ok(h) => {
                prop_assert_eq!(h.h.vstack(&h.b).mul(&h.q), a.clone());
                prop_assert!(h.q.det().abs().is_one());
            }
            Err(Error::RankDeficient) => prop_assert!(a.rank() < a.cols()),
            Err(Error::LeadingBlockSingular) => prop_assert!(a.select_rows(&(0..a.cols()).collect::<Vec<_>>()).det().is_zero()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn sign_decomposition_identity(seed in any::<u64>(), n in 1..=4usize) {
        let mut r = rng(seed);
        let u = small_det_matrix(&mut r, n, 24);
        let cones = sign_decompose(&u).unwrap();
        prop_assert!(cones.iter().all(|c| c.generators.det().abs().is_one()));
        let report = indicator_identity_check(&u, &cones, 60, seed);
        prop_assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn half_vector_is_short(seed in any::<u64>(), n in 1..=5usize) {
        let u = small_det_matrix(&mut rng(seed), n, 40);
        prop_assume!(!u.det().abs().is_one());
        let h = find_half_vector(&u).unwrap();
        prop_assert_eq!(u.mul_rat_vec(&h.t), to_rat(&h.b));
        let norm = h.t.iter().map(Signed::abs).max().unwrap();
        prop_assert!(norm.is_positive() && norm <= rat(1, 2));
    }

    #[test]
    fn triangulation_partitions_generic_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=3usize);
        // generators in the positive orthant keep the cone pointed
        let g = loop {
            let extra = r.gen_range(0..=3);
            let g = random_matrix(&mut r, d, d + extra, 0, 4);
            if g.rank() == d && (0..g.cols()).all(|j| g.column(j).iter().any(|x| !x.is_zero())) {
                break g;
            }
        };
        let cells: Vec<IntMatrix> = triangulate(&g).unwrap().iter().map(|c| g.select_columns(c)).collect();
        for _ in 0..40 {
            let coeffs: Vec<Rat> = (0..g.cols()).map(|_| rat(r.gen_range(1..=97), 13)).collect();
            let x = g.mul_rat_vec(&coeffs);
            let on_boundary = cells.iter().any(|c| c.solve(&x).unwrap().iter().any(Zero::is_zero));
            if on_boundary {
                continue;
            }
            prop_assert_eq!(cells.iter().filter(|c| in_cone(c, &x)).count(), 1);
        }
    }

    #[test]
    fn half_open_cones_cover_exactly(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = loop {
            let extra = r.gen_range(1..=3);
            let g = random_matrix(&mut r, 3, 3 + extra, 0, 3);
            if g.rank() == 3 && (0..g.cols()).all(|j| g.column(j).iter().any(|x| !x.is_zero())) {
                break g;
            }
        };
        let cells: Vec<IntMatrix> = triangulate(&g).unwrap().iter().map(|c| g.select_columns(c)).collect();
        let parts = half_open_flags(&cells);
        // integer points are often on shared facets
        for x0 in 0..=4i64 {
            for x1 in 0..=4i64 {
                for x2 in 0..=4i64 {
                    let x = vec![rat(x0, 1), rat(x1, 1), rat(x2, 1)];
                    let inside = cells.iter().any(|c| in_cone(c, &x));
                    let hits = parts.iter().filter(|p| p.contains(&x)).count();
                    prop_assert_eq!(hits, usize::from(inside));
                }
            }
        }
    }

    #[test]
    fn parallelepiped_has_det_points(seed in any::<u64>(), n in 1..=3usize) {
        let mut r = rng(seed);
        let b = small_det_matrix(&mut r, n, 12);
        let strict: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
        let pts = parallelepiped_points(&b, &strict).unwrap();
        prop_assert_eq!(Int::from(pts.len()), b.det().abs());
        for p in &pts {
            let t = b.solve_int(p).unwrap();
            for (tj, s) in t.iter().zip(&strict) {
                if *s {
                    prop_assert!(tj.is_positive() && *tj <= rat(1, 1));
                } else {
                    prop_assert!(!tj.is_negative() && *tj < rat(1, 1));
                }
            }
        }
    }

    #[test]
    fn vertex_round_preserves_lattice_points(seed in any::<u64>(), n in 1..=4usize) {
        let mut r = rng(seed);
        let b = small_det_matrix(&mut r, n, 1);
        let v: Vec<Rat> = (0..n).map(|_| rat(r.gen_range(-20..=20), r.gen_range(1..=5))).collect();
        let w = vertex_round(&v, &b).unwrap();
        for _ in 0..50 {
            let x: Vec<Int> = (0..n).map(|_| Int::from(r.gen_range(-12..=12))).collect();
            let xr = to_rat(&x);
            let dv: Vec<Rat> = xr.iter().zip(&v).map(|(a, c)| a - c).collect();
            let dw: Vec<Rat> = xr.iter().zip(&w).map(|(a, c)| a - Rat::from_integer(c.clone())).collect();
            prop_assert_eq!(in_cone(&b, &dv), in_cone(&b, &dw));
        }
    }

    #[test]
    fn todd_homogeneity(xi in prop::collection::vec((1i64..=9).prop_flat_map(|x| prop_oneof![Just(x), Just(-x)]), 1..=4)) {
        let xi: Vec<Int> = xi.into_iter().map(Int::from).collect();
        let doubled: Vec<Int> = xi.iter().map(|x| x * 2).collect();
        let a = todd_values(&xi).values;
        let b = todd_values(&doubled).values;
        prop_assert_eq!(&a[0], &rat(1, 1));
        for (j, (x, y)) in a.iter().zip(&b).enumerate() {
            prop_assert_eq!(x * Rat::from_integer(Int::from(1) << j), y.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn todd_route_matches_series_route(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3usize);
        let k = r.gen_range(1..=2);
        let (p, want) = bounded_inequality(&mut r, n, k, 3, 5, 200);
        let f = gf_inequality(&p).unwrap();
        prop_assert_eq!(specialize_count(&f).unwrap(), want.clone());
        prop_assert_eq!(specialize_count_todd(&f), Rat::from_integer(want));
    }

    #[test]
    fn evaluation_matches_point_sum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3usize);
        let k = r.gen_range(1..=2);
        let (p, _) = bounded_inequality(&mut r, n, k, 3, 4, 100);
        let f = gf_inequality(&p).unwrap();
        let dir = generic_direction(&f);
        let base = rat(r.gen_range(8..=12), 11);
        prop_assume!(base != rat(1, 1));
        let x: Vec<Rat> = dir.l.iter().map(|li| num_traits::pow(base.clone(), usize::try_from(li).unwrap())).collect();
        let mut want = Rat::zero();
        for pt in lattice_points(&p, None).unwrap() {
            let mut term = Rat::one();
            for (xi, e) in x.iter().zip(&pt) {
                let k = i32::try_from(e).unwrap();
                term *= if k >= 0 { num_traits::pow(xi.clone(), k as usize) } else { num_traits::pow(xi.recip(), (-k) as usize) };
            }
            want += term;
        }
        prop_assert_eq!(evaluate_at(&f, &x).unwrap(), want);
    }

    #[test]
    fn standard_transform_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=2usize);
        let n = r.gen_range(k + 1..=5usize);
        let a = random_matrix(&mut r, k, n, 1, 5);
        prop_assume!(a.rank() == k);
        let b: Vec<Int> = (0..k).map(|_| Int::from(r.gen_range(0..=15))).collect();
        let p = HRepPolyhedron::standard(a.clone(), b.clone()).unwrap();
        let direct = brute_count(&p, None).unwrap();
        let Ok((an, bn)) = normalize_standard(&a, &b) else {
            prop_assert!(direct.is_zero());
            return Ok(());
        };
        let Ok(tr) = standard_to_inequality(&an, &bn) else {
            prop_assert!(direct.is_zero());
            return Ok(());
        };
        let reduced = tr.polyhedron();
        let via = if tr.dim() == 0 { Int::from(u8::from(tr.offset.iter().all(|x| !x.is_negative()))) } else { brute_count(&reduced, None).unwrap() };
        prop_assert_eq!(&direct, &via);
        let f = gf_standard(&p).unwrap();
        prop_assert_eq!(specialize_count(&f).unwrap(), direct.clone());
        if tr.dim() > 0 {
            prop_assert_eq!(specialize_count(&gf_inequality(&reduced).unwrap()).unwrap(), direct);
        }
    }

    #[test]
    fn standard_ehrhart_matches_transformed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4usize);
        let a = random_matrix(&mut r, 1, n, 1, 4);
        let b = vec![Int::from(r.gen_range(1..=6))];
        let p = HRepPolyhedron::standard(a.clone(), b.clone()).unwrap();
        let Ok((an, bn)) = normalize_standard(&a, &b) else { return Ok(()) };
        let tr = standard_to_inequality(&an, &bn).unwrap();
        let reduced = tr.polyhedron();
        prop_assume!(classify(&reduced) == Classification::Pointed);
        let q1 = ehrhart_quasipolynomial(&p).unwrap();
        let q2 = ehrhart_quasipolynomial(&reduced).unwrap();
        for m in 1..=12 {
            let m = Int::from(m);
            prop_assert_eq!(eval_quasipolynomial(&q1, &m).unwrap(), eval_quasipolynomial(&q2, &m).unwrap());
        }
        if q1.period == q2.period {
            prop_assert_eq!(q1.coeffs, q2.coeffs);
        }
    }

    #[test]
    fn vertices_are_feasible_and_classified(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3usize);
        let extra = r.gen_range(0..=3);
        let a = random_matrix(&mut r, n + extra, n, -3, 3);
        let b: Vec<Int> = (0..a.rows()).map(|_| Int::from(r.gen_range(-3..=5))).collect();
        let p = HRepPolyhedron::inequality(a.clone(), b.clone()).unwrap();
        let class = classify(&p);
        if a.rank() == n {
            prop_assert_ne!(class, Classification::HasLine);
            let vs = vertices(&p).unwrap();
            if class == Classification::Empty {
                prop_assert!(vs.is_empty());
            }
            for v in &vs {
                let av = a.mul_rat_vec(&v.point);
                prop_assert!(av.iter().zip(&b).all(|(x, y)| *x <= Rat::from_integer(y.clone())));
                prop_assert_eq!(a.select_rows(&v.active).rank(), n);
            }
        } else {
            prop_assert_eq!(vertices(&p), Err(Error::RankDeficient));
        }
    }

    #[test]
    fn vrep_matches_inequality_on_simplices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3usize);
        let (pts, hrep) = random_lattice_polytope(&mut r, n, 0, 3);
        let f = gf_vrep(&pts, &IntMatrix::zeros(n, 0)).unwrap();
        prop_assert_eq!(specialize_count(&f).unwrap(), count(&hrep));
    }

    #[test]
    fn output_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, _) = bounded_inequality(&mut r, 2, 1, 3, 5, 50);
        prop_assert_eq!(generating_function(&p).unwrap(), generating_function(&p).unwrap());
        let (pts, _) = random_lattice_polytope(&mut r, 2, 2, 4);
        let none = IntMatrix::zeros(2, 0);
        prop_assert_eq!(gf_vrep(&pts, &none).unwrap(), gf_vrep(&pts, &none).unwrap());
    }

    #[test]
    fn brute_count_closed_forms(dims in prop::collection::vec((-3i64..=2, 0i64..=4), 1..=4), m in 1i64..=6) {
        let n = dims.len();
        let mut rows: Vec<Vec<Int>> = Vec::new();
        let mut rhs = Vec::new();
        for (i, (lo, width)) in dims.iter().enumerate() {
            let mut up = vec![Int::zero(); n];
            up[i] = Int::one();
            rows.push(up.clone());
            rhs.push(Int::from(lo + width));
            rows.push(up.iter().map(|x| -x).collect());
            rhs.push(Int::from(-lo));
        }
        let bx = HRepPolyhedron::inequality(IntMatrix::from_big_rows(rows, n).unwrap(), rhs).unwrap();
        let want: i64 = dims.iter().map(|(_, w)| w + 1).product();
        prop_assert_eq!(brute_count(&bx, None).unwrap(), Int::from(want));

        let simplex = HRepPolyhedron::standard(IntMatrix::new(1, n + 1, vec![Int::one(); n + 1]).unwrap(), vec![Int::from(m)]).unwrap();
        prop_assert_eq!(brute_count(&simplex, None).unwrap(), latcount_core::genfun::binomial(m as usize + n, n));
    }
}

#[test]
fn brute_count_respects_explicit_box() {
    let ray = HRepPolyhedron::from_i64(Form::Inequality, &[&[-1, 0], &[0, -1], &[1, -1]], &[0, 0, 0]).unwrap();
    assert!(!is_polytope(&ray));
    let bx = IntBox { lower: vec![Int::from(0), Int::from(0)], upper: vec![Int::from(3), Int::from(3)] };
    // 0 <= x <= y <= 3
    assert_eq!(brute_count(&ray, Some(&bx)).unwrap(), Int::from(10));
}
