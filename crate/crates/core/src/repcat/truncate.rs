use std::sync::Arc;

use crate::coalg::{Window, WindowRef};
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Quotient};

use super::{sub_rep, Rep, RepMap};

/// `M□Λ'`: the largest subcomodule with coefficients in a smaller window.
#[derive(Clone, Debug)]
pub struct Truncation<S> {
    /// The truncation as a representation over the smaller window.
    pub rep: Rep<S>,
    /// Its inclusion into `M`, over `M`'s window.
    pub inclusion: RepMap<S>,
}

/// Paths of `outer` starting at `v` that do not lie in `inner`.
fn paths_leaving<'a>(outer: &'a Window, inner: &'a Window, v: usize) -> impl Iterator<Item = usize> + 'a {
    outer
        .paths_from(v)
        .into_iter()
        .filter(move |&p| outer.translate_path(p, inner).is_none())
}

/// At each vertex of `inner`, the vectors killed by every path that leaves
/// `inner`; zero at the other vertices.
pub fn cotensor_window<S: Scalar>(m: &Rep<S>, inner: &WindowRef) -> Result<Truncation<S>> {
    let outer = m.window();
    if !inner.is_sub_window_of(outer) {
        return Err(ArsError::NotSubWindow(format!("{inner:?} in {outer:?}")));
    }
    let bases = (0..outer.vertex_count())
        .map(|v| {
            let d = m.dim(v);
            if inner.vertex(outer.vertex_label(v)).is_err() {
                return Ok(Mat::zeros(d, 0));
            }
            let actions: Vec<Mat<S>> = paths_leaving(outer, inner, v)
                .map(|p| m.path_action(p))
                .collect();
            Ok(Mat::vstack_all(d, &actions)?.kernel_basis())
        })
        .collect::<Result<Vec<_>>>()?;
    let (sub, inclusion) = sub_rep(m, bases)?;
    let rep = sub.rewindow(inner)?;
    Ok(Truncation { rep, inclusion })
}

/// `dim DM·Λ'^⊥`, computed on the dual side as the span of the images of the
/// dual actions of all paths leaving `inner`.
pub fn dual_perp_dim<S: Scalar>(m: &Rep<S>, inner: &WindowRef) -> Result<usize> {
    let outer = m.window();
    let dm = dualize(m);
    let op = dm.window().clone();
    let mut total = 0;
    for v in 0..outer.vertex_count() {
        let images: Vec<Mat<S>> = paths_leaving(outer, inner, v)
            .map(|p| dm.path_action(outer.reverse_path(p, &op)))
            .collect();
        total += Mat::hstack_all(m.dim(v), &images)?.rank();
    }
    Ok(total)
}

/// The linear dual: same dimensions over the opposite window, transposed
/// matrices.
pub fn dualize<S: Scalar>(m: &Rep<S>) -> Rep<S> {
    let op = m.window().opposite();
    Rep::new_unchecked(
        op,
        m.dims().to_vec(),
        m.mats().iter().map(Mat::transpose).collect(),
    )
}

/// `D f: DY -> DX` for `f: X -> Y`.
pub fn dualize_map<S: Scalar>(f: &RepMap<S>) -> RepMap<S> {
    let source = dualize(f.target());
    let target = dualize(f.source()).rewindow(source.window()).expect("same window");
    RepMap::new_unchecked(source, target, f.comps().iter().map(Mat::transpose).collect())
}

fn check_opposite<S: Scalar>(m: &Rep<S>, n: &Rep<S>) -> Result<()> {
    let op = m.window().opposite();
    if *op == **n.window() {
        Ok(())
    } else {
        Err(ArsError::WindowMismatch(
            "second argument must live over the opposite window".into(),
        ))
    }
}

/// The cotensor product `M□N` of a right comodule `M` and a left comodule
/// `N` (a representation over the opposite window). Returns a basis of the
/// equalizer inside `⊕_v M_v ⊗ N_v`, the summand at `v` flattened row-major
/// as a `dim M_v x dim N_v` matrix.
pub fn cotensor<S: Scalar>(m: &Rep<S>, n: &Rep<S>) -> Result<Mat<S>> {
    check_opposite(m, n)?;
    let w = m.window();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offsets = Vec::new();
    let mut total = 0;
    for v in 0..dm.len() {
        offsets.push(total);
        total += dm[v] * dn[v];
    }
    let rows: usize = w
        .quiver()
        .arrows()
        .iter()
        .map(|a| dm[a.target] * dn[a.source])
        .sum();
    let mut system: Mat<S> = Mat::zeros(rows, total);
    let mut row = 0;
    for (a, arrow) in w.quiver().arrows().iter().enumerate() {
        let (u, v) = (arrow.source, arrow.target);
        // M_a T_u - T_v N_a^T = 0, with N_a: N_v -> N_u.
        let (ma, na) = (m.mat(a), n.mat(a));
        for r in 0..dm[v] {
            for c in 0..dn[u] {
                for k in 0..dm[u] {
                    let col = offsets[u] + k * dn[u] + c;
                    system[(row, col)] = system[(row, col)].clone() + ma[(r, k)].clone();
                }
                for k in 0..dn[v] {
                    let col = offsets[v] + r * dn[v] + k;
                    system[(row, col)] = system[(row, col)].clone() - na[(c, k)].clone();
                }
                row += 1;
            }
        }
    }
    Ok(system.kernel_basis())
}

/// `U ⊗_R V` for a right module `U` (a representation of the window) and a
/// left module `V` (a representation of the opposite window) over the dual
/// algebra `R`.
#[derive(Clone, Debug)]
pub struct TensorOverDual<S> {
    pub dim: usize,
    /// Lifts of a basis of the tensor product to `⊕_v U_v ⊗ V_v`.
    pub basis: Mat<S>,
}

/// The cokernel of `x·a ⊗ y - x ⊗ a·y` inside `⊕_v U_v ⊗ V_v`.
pub fn tensor_over_dual<S: Scalar>(u: &Rep<S>, v: &Rep<S>) -> Result<TensorOverDual<S>> {
    check_opposite(u, v)?;
    let w = u.window();
    let (du, dv) = (u.dims(), v.dims());
    let mut offsets = Vec::new();
    let mut total = 0;
    for x in 0..du.len() {
        offsets.push(total);
        total += du[x] * dv[x];
    }
    let mut relations: Vec<Vec<S>> = Vec::new();
    for (a, arrow) in w.quiver().arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ua, va) = (u.mat(a), v.mat(a));
        for i in 0..du[s] {
            for j in 0..dv[t] {
                let mut rel = vec![S::zero(); total];
                // (U_a e_i) ⊗ f_j in U_t ⊗ V_t
                for r in 0..du[t] {
                    let idx = offsets[t] + r * dv[t] + j;
                    rel[idx] = rel[idx].clone() + ua[(r, i)].clone();
                }
                // e_i ⊗ (V_a f_j) in U_s ⊗ V_s
                for c in 0..dv[s] {
                    let idx = offsets[s] + i * dv[s] + c;
                    rel[idx] = rel[idx].clone() - va[(c, j)].clone();
                }
                relations.push(rel);
            }
        }
    }
    let span = Mat::from_vec(
        relations.len(),
        total,
        relations.into_iter().flatten().collect(),
    )?
    .transpose();
    let q = Quotient::new(&span);
    Ok(TensorOverDual {
        dim: q.dim(),
        basis: q.lifts().clone(),
    })
}

impl<S: Scalar> Rep<S> {
    /// Shorthand for [`cotensor_window`].
    pub fn truncate(&self, inner: &WindowRef) -> Result<Truncation<S>> {
        cotensor_window(self, inner)
    }

    /// Whether `self` and `other` live over the same window object.
    pub fn shares_window(&self, other: &Rep<S>) -> bool {
        Arc::ptr_eq(self.window(), other.window())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::Quiver;
    use crate::repcat::{direct_sum, hom_dim, injective_at, is_iso, projective_at};
    use crate::F32003;

    fn a4() -> WindowRef {
        Window::full(Quiver::linear_a(4)).unwrap()
    }

    fn thin(w: &WindowRef, vs: &[&str]) -> Rep<F32003> {
        Rep::thin(w.clone(), vs).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let w = a4();
        let small = w.sub_window(["2", "3"], 1).unwrap();
        let t = cotensor_window(&thin(&w, &["1", "2", "3"]), &small).unwrap();
        assert_eq!(t.rep.dims(), &[1, 1]);
        assert_eq!(t.inclusion.source().dims(), &[0, 1, 1, 0]);
        let full = cotensor_window(&thin(&w, &["1", "2", "3"]), &w).unwrap();
        assert_eq!(full.rep, thin(&w, &["1", "2", "3"]));
        let no1 = w.sub_window(["2", "3", "4"], 2).unwrap();
        assert!(cotensor_window(&thin(&w, &["1"]), &no1).unwrap().rep.is_zero());
        assert!(cotensor_window(&thin(&w, &["1"]), &Window::full(Quiver::linear_a(5)).unwrap()).is_err());
    }

    #[test]
    fn truncation_is_largest() {
        // Over the loop, truncating V_3 to maxlen 1 keeps x^1 and x^2 (the
        // vectors killed by x^2).
        let lp = Window::new(Quiver::single_loop(), 3);
        let mut shift = Mat::<F32003>::zeros(3, 3);
        shift[(1, 0)] = F32003::from_i64(1);
        shift[(2, 1)] = F32003::from_i64(1);
        let v3 = Rep::new(lp.clone(), vec![3], vec![shift]).unwrap();
        let lp1 = Window::new(Quiver::single_loop(), 1);
        let t = cotensor_window(&v3, &lp1).unwrap();
        assert_eq!(t.rep.total_dim(), 2);
        assert_eq!(t.rep.total_dim() + dual_perp_dim(&v3, &lp1).unwrap(), 3);
    }

    #[test]
    fn duality() {
        let w = a4();
        let s2 = thin(&w, &["2"]);
        let ds2 = dualize(&s2);
        assert_eq!(ds2.dims(), s2.dims());
        let v13 = thin(&w, &["1", "2", "3"]);
        let dv13 = dualize(&v13);
        assert_eq!(dv13, Rep::thin(w.opposite(), &["1", "2", "3"]).unwrap());
        let v23 = thin(&w, &["2", "3"]);
        assert!(is_iso(&dualize(&dualize(&v23)).rewindow(&w).unwrap(), &v23).unwrap());
        for x in [&v13, &v23, &s2] {
            for y in [&v13, &v23, &s2] {
                assert_eq!(
                    hom_dim(x, y).unwrap(),
                    hom_dim(&dualize(y), &dualize(x).rewindow(dualize(y).window()).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn cotensor_matches_tensor_of_duals() {
        let w = a4();
        let m = thin(&w, &["1", "2", "3"]);
        let n = dualize(&thin(&w, &["2", "3"]));
        let lhs = cotensor(&m, &n).unwrap().cols();
        let dn = dualize(&n).rewindow(&w).unwrap();
        let dm = dualize(&m).rewindow(n.window()).unwrap();
        assert_eq!(lhs, tensor_over_dual(&dn, &dm).unwrap().dim);
        assert_eq!(lhs, hom_dim(&thin(&w, &["2", "3"]), &m).unwrap());
    }

    #[test]
    fn tensor_unit_and_zero() {
        let w = a4();
        let op = w.opposite();
        let regular = direct_sum(
            &["1", "2", "3", "4"]
                .iter()
                .map(|v| projective_at::<F32003>(&w, v).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap()
        .rep;
        let v = injective_at::<F32003>(&op, "2").unwrap();
        assert_eq!(tensor_over_dual(&regular, &v).unwrap().dim, v.total_dim());
        assert_eq!(tensor_over_dual(&Rep::zero(w.clone()), &v).unwrap().dim, 0);
    }
}
