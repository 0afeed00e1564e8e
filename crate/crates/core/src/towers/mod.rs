//! Chains of windows and the towers of sequences and representations built
//! along them.

mod chain;
mod fas;
mod loops;
mod ml;
mod seq;
mod transpose;

pub use chain::{chain, ChainRule, WindowChain};
pub use fas::{certify_fas, FasCertificate, FasWitness, KNIT_CAP};
pub use loops::{loop_cone, loop_module, loop_sequence, loop_tower};
pub use ml::{hom_tower, ml_check, LinearSeq, LinearTower, MlLevel, MlReport};
pub use seq::{
    build_ass_tower, colimit, colimit_report, dual_tower, find_cone, lift_through, restrict_sequence,
    split_limit_check, Colimit, ColimitReport, ConeMap, ConeVerdict, SeqMap, SeqTower, TowerDirection,
};
pub use transpose::{dual_rep_tower, truncation_check, transpose_tower, TruncationMatch, RepTower, TransposeLevel, TransposeReport};

use rand::Rng;

use crate::field::Scalar;
use crate::linalg::Mat;

fn random_mat<S: Scalar, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Mat<S> {
    let data = (0..rows * cols).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect();
    Mat::from_vec(rows, cols, data).expect("shape")
}

/// A random inverse tower of split exact sequences `k^a -> k^(a+c) -> k^c`
/// with upper triangular connecting maps on the middle terms.
pub fn random_linear_tower<S: Scalar, R: Rng>(rng: &mut R, levels: usize, max_dim: usize) -> LinearTower<S> {
    let dims: Vec<(usize, usize)> = (0..levels)
        .map(|_| (rng.gen_range(0..=max_dim), rng.gen_range(0..=max_dim)))
        .collect();
    let seqs = dims
        .iter()
        .map(|&(a, c)| {
            let mut f = Mat::zeros(a + c, a);
            f.set_block(0, 0, &Mat::identity(a));
            let mut g = Mat::zeros(c, a + c);
            g.set_block(0, a, &Mat::identity(c));
            LinearSeq { f, g }
        })
        .collect();
    let maps = dims
        .windows(2)
        .map(|p| {
            let ((a0, c0), (a1, c1)) = (p[0], p[1]);
            let alpha = random_mat::<S, R>(rng, a0, a1);
            let beta = random_mat::<S, R>(rng, a0, c1);
            let gamma = random_mat::<S, R>(rng, c0, c1);
            let mut b = Mat::zeros(a0 + c0, a1 + c1);
            b.set_block(0, 0, &alpha);
            b.set_block(0, a1, &beta);
            b.set_block(a0, a1, &gamma);
            [alpha, b, gamma]
        })
        .collect();
    LinearTower::new(seqs, maps).expect("commuting by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artheory::{almost_split_sequence, Direction};
    use crate::coalg::{Quiver, Window};
    use crate::repcat::{is_iso, Rep, ShortExact};
    use crate::F32003;

    type K = F32003;

    fn interval(w: &crate::coalg::WindowRef, lo: i64, hi: i64) -> Rep<K> {
        let labels: Vec<String> = (lo..=hi).map(|v| v.to_string()).collect();
        Rep::thin(w.clone(), &labels).unwrap()
    }

    #[test]
    fn interval_tower_stabilizes() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(&c.windows[0], -1, 0);
        let t = build_ass_tower(&m, &c).unwrap();
        for (i, level) in t.levels.iter().enumerate() {
            let a = interval(&c.windows[i], 0, 1);
            assert!(is_iso(level.a(), &a).unwrap(), "level {i}");
        }
        for m in &t.connecting {
            assert!(m.a.is_injective() && m.b.is_injective());
            assert!(m.c.is_iso());
        }
        match colimit(&t).unwrap() {
            Colimit::Stabilized { level, .. } => assert_eq!(level, 0),
            Colimit::NotStabilized { .. } => panic!("expected stabilization"),
        }
        assert!(find_cone(&t).unwrap().is_none());
    }

    #[test]
    fn restriction_recovers_levels() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(&c.windows[0], -1, 0);
        let t = build_ass_tower(&m, &c).unwrap();
        let top = t.levels.last().unwrap();
        for (i, w) in c.windows.iter().enumerate() {
            let r = restrict_sequence(top, w).unwrap();
            assert!(is_iso(r.a(), t.levels[i].a()).unwrap());
            assert!(is_iso(r.b(), t.levels[i].b()).unwrap());
        }
        let same = restrict_sequence(top, c.last()).unwrap();
        assert_eq!(same.b().dims(), top.b().dims());
    }

    #[test]
    fn d_infinity_simple_grows() {
        let c = chain(ChainRule::DInfinity, 4).unwrap();
        let s = Rep::<K>::simple(c.windows[0].clone(), "1").unwrap();
        let mut ends = Vec::new();
        for w in &c.windows {
            let s = s.rewindow(w).unwrap();
            let end = crate::homology::dtr(&s).unwrap();
            let cert = almost_split_sequence(&end).unwrap();
            assert!(is_iso(cert.sequence.a(), &s).unwrap());
            ends.push(end.total_dim());
        }
        assert!(ends.windows(2).all(|p| p[0] < p[1]), "{ends:?}");
        let (report, tower) = transpose_tower(&s, &c).unwrap();
        for (lvl, w) in report.levels.iter().zip(&c.windows) {
            assert_eq!(lvl.dims, vec![1; w.vertex_count()]);
            assert!(lvl.truncation_agrees);
        }
        assert_eq!(report.stabilized_at, None);
        let dual = dual_rep_tower(&tower).unwrap();
        assert_eq!(dual.total_dims(), tower.total_dims());
        assert!(dual.maps.iter().all(|m| m.is_surjective()));
    }

    #[test]
    fn interval_transpose_stabilizes() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(&c.windows[0], 0, 1);
        let (report, _) = transpose_tower(&m, &c).unwrap();
        assert_eq!(report.stabilized_at, Some(0));
        assert!(report.levels.iter().all(|l| l.total == 2));
    }

    #[test]
    fn loop_tower_splits_in_the_limit() {
        let t = loop_tower::<K>(2, 4).unwrap();
        for level in &t.levels {
            assert!(!level.is_split().unwrap());
        }
        let cone = loop_cone(&t).unwrap();
        assert!(split_limit_check(&t, &cone).unwrap().pass);
        let bad: Vec<ConeMap<K>> = cone
            .iter()
            .map(|s| ConeMap {
                map: s.map.scale(&K::from_i64(2)),
                ..s.clone()
            })
            .collect();
        assert!(!split_limit_check(&t, &bad).unwrap().pass);
    }

    #[test]
    fn loop_levels_are_almost_split() {
        for n in 1..4 {
            let d = loop_sequence::<K>(n).unwrap();
            let cert = almost_split_sequence(d.c()).unwrap();
            assert!(is_iso(cert.sequence.b(), d.b()).unwrap());
        }
    }

    #[test]
    fn split_constant_tower() {
        let w = Window::full(Quiver::linear_a(2)).unwrap();
        let s1 = Rep::<K>::simple(w.clone(), "1").unwrap();
        let s2 = Rep::<K>::simple(w.clone(), "2").unwrap();
        let d = ShortExact::split(&s1, &s2).unwrap();
        let id = |x: &Rep<K>| crate::repcat::RepMap::identity(x);
        let step = SeqMap::new(&d, &d, id(d.a()), id(d.b()), id(d.c())).unwrap();
        let t = SeqTower::new(TowerDirection::Forward, vec![d.clone(), d.clone(), d.clone()], vec![step.clone(), step]).unwrap();
        let cone = find_cone(&t).unwrap().expect("split tower has a cone");
        assert!(split_limit_check(&t, &cone).unwrap().pass);
        assert!(matches!(colimit(&t).unwrap(), Colimit::Stabilized { level: 0, .. }));
        let dual = dual_tower(&t).unwrap();
        assert_eq!(dual.profile(), t.profile());
        let cert = certify_fas(&d, Direction::Right, &w, 4, None).unwrap();
        assert!(!cert.pass && !cert.non_split);
    }

    #[test]
    fn fas_on_interval_colimit() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(&c.windows[0], -1, 0);
        let t = build_ass_tower(&m, &c).unwrap();
        let seq = colimit(&t).unwrap().sequence().unwrap().clone();
        for w in &c.windows {
            assert!(certify_fas(&seq, Direction::Right, w, 8, None).unwrap().pass);
        }
        let dual = dual_tower(&t).unwrap();
        for w in &c.windows {
            let cert = certify_fas(&dual.levels[0], Direction::Left, &w.opposite(), 8, None).unwrap();
            assert!(cert.pass, "{cert:?}");
        }
    }

    #[test]
    fn hom_towers_are_exact() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(&c.windows[0], -1, 0);
        let t = build_ass_tower(&m, &c).unwrap();
        let d = t.levels.last().unwrap();
        assert!(hom_tower(&interval(c.last(), -2, 0), d, &c).is_err());
        for x in [interval(c.last(), -3, -2), interval(c.last(), 0, 1), interval(c.last(), -3, 3)] {
            let h = hom_tower(&x, d, &c).unwrap();
            let r = ml_check(&h).unwrap();
            assert!(r.exact, "{r:?}");
        }
    }

    #[test]
    fn truncation_on_intervals() {
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let m = interval(c.last(), -1, 1);
        for w in &c.windows {
            assert_eq!(truncation_check(&m, w).unwrap(), TruncationMatch::Exact);
        }
    }

    #[test]
    fn truncation_on_loop_up_to_injectives() {
        let w = Window::new(Quiver::single_loop(), 3);
        let m = loop_module::<K>(2, &w).unwrap();
        let inner = Window::new(Quiver::single_loop(), 1);
        assert_eq!(truncation_check(&m, &inner).unwrap(), TruncationMatch::UpToInjectives);
        let inner = Window::new(Quiver::single_loop(), 2);
        assert_eq!(truncation_check(&m, &inner).unwrap(), TruncationMatch::Exact);
    }
}
