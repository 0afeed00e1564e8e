use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Mat;

use super::{Rep, RepMap};

/// A basis of `Hom(X, Y)` with coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace<S> {
    source: Rep<S>,
    target: Rep<S>,
    basis: Vec<RepMap<S>>,
    // Columns are the flattened basis maps.
    columns: Mat<S>,
}

impl<S: Scalar> HomSpace<S> {
    pub fn new(source: &Rep<S>, target: &Rep<S>) -> Result<Self> {
        let basis = hom_basis(source, target)?;
        Ok(Self::from_basis(source, target, basis))
    }

    pub(crate) fn from_basis(source: &Rep<S>, target: &Rep<S>, basis: Vec<RepMap<S>>) -> Self {
        let n: usize = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(s, t)| s * t)
            .sum();
        let mut columns = Mat::zeros(n, basis.len());
        for (j, m) in basis.iter().enumerate() {
            for (i, x) in m.flatten().into_iter().enumerate() {
                columns[(i, j)] = x;
            }
        }
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            basis,
            columns,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMap<S>] {
        &self.basis
    }

    pub fn source(&self) -> &Rep<S> {
        &self.source
    }

    pub fn target(&self) -> &Rep<S> {
        &self.target
    }

    /// Flattened basis maps as columns.
    pub fn columns(&self) -> &Mat<S> {
        &self.columns
    }

    pub fn combination(&self, coeffs: &[S]) -> RepMap<S> {
        RepMap::combination(&self.source, &self.target, &self.basis, coeffs)
    }

    /// Coordinates of `map` in the basis.
    pub fn coordinates(&self, map: &RepMap<S>) -> Result<Option<Vec<S>>> {
        let x = self
            .columns
            .solve(&Mat::column_vector(map.flatten()))?;
        Ok(x.map(|x| (0..self.dim()).map(|i| x[(i, 0)].clone()).collect()))
    }
}

/// A basis of the space of intertwiners `X -> Y`, found as the kernel of the
/// linear system `Y_a φ_u = φ_v X_a` over all arrows `a: u -> v`.
pub fn hom_basis<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> Result<Vec<RepMap<S>>> {
    x.same_window(y)?;
    let w = x.window();
    let dx = x.dims();
    let dy = y.dims();
    let mut offsets = Vec::with_capacity(dx.len());
    let mut n = 0;
    for v in 0..dx.len() {
        offsets.push(n);
        n += dx[v] * dy[v];
    }
    let rows: usize = w
        .quiver()
        .arrows()
        .iter()
        .map(|a| dy[a.target] * dx[a.source])
        .sum();
    let mut system: Mat<S> = Mat::zeros(rows, n);
    let mut row = 0;
    for (a, arrow) in w.quiver().arrows().iter().enumerate() {
        let (u, v) = (arrow.source, arrow.target);
        let ya = y.mat(a);
        let xa = x.mat(a);
        for r in 0..dy[v] {
            for c in 0..dx[u] {
                // (Y_a φ_u)[r, c]
                for k in 0..dy[u] {
                    let col = offsets[u] + k * dx[u] + c;
                    system[(row, col)] = system[(row, col)].clone() + ya[(r, k)].clone();
                }
                // -(φ_v X_a)[r, c]
                for k in 0..dx[v] {
                    let col = offsets[v] + r * dx[v] + k;
                    system[(row, col)] = system[(row, col)].clone() - xa[(k, c)].clone();
                }
                row += 1;
            }
        }
    }
    let kernel = system.kernel_basis();
    Ok((0..kernel.cols())
        .map(|j| RepMap::from_flat(x, y, &kernel.column(j)))
        .collect())
}

pub fn hom_dim<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{Quiver, Window};
    use crate::repcat::direct_sum;
    use crate::F32003;

    #[test]
    fn interval_homs() {
        let w = Window::full(Quiver::linear_a(4)).unwrap();
        let v23 = Rep::<F32003>::thin(w.clone(), &["2", "3"]).unwrap();
        let v13 = Rep::<F32003>::thin(w.clone(), &["1", "2", "3"]).unwrap();
        assert_eq!(hom_dim(&v23, &v13).unwrap(), 1);
        assert_eq!(hom_dim(&v13, &v23).unwrap(), 0);
        for i in ["1", "2", "3", "4"] {
            for j in ["1", "2", "3", "4"] {
                let si = Rep::<F32003>::simple(w.clone(), i).unwrap();
                let sj = Rep::<F32003>::simple(w.clone(), j).unwrap();
                assert_eq!(hom_dim(&si, &sj).unwrap(), usize::from(i == j));
            }
        }
    }

    #[test]
    fn basis_maps_intertwine_and_additivity() {
        let w = Window::full(Quiver::linear_a(4)).unwrap();
        let x = Rep::<F32003>::thin(w.clone(), &["2", "3", "4"]).unwrap();
        let y = Rep::<F32003>::thin(w.clone(), &["1", "2", "3"]).unwrap();
        let z = Rep::<F32003>::thin(w.clone(), &["3", "4"]).unwrap();
        for m in hom_basis(&x, &y).unwrap() {
            m.validate().unwrap();
        }
        let yz = direct_sum(&[y.clone(), z.clone()]).unwrap().rep;
        assert_eq!(
            hom_dim(&x, &yz).unwrap(),
            hom_dim(&x, &y).unwrap() + hom_dim(&x, &z).unwrap()
        );
        let space = HomSpace::new(&z, &x).unwrap();
        let m = space.combination(&[F32003::from_i64(5)]);
        assert_eq!(space.coordinates(&m).unwrap(), Some(vec![F32003::from_i64(5)]));
    }
}
