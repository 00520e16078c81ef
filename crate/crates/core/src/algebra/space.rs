use std::collections::HashSet;

use num_traits::One;

use super::AlgebraError;
use crate::gaussian::GaussianRational;
use crate::matrix::ExactMatrix;

/// Ordered canonical pairs. The operator basis is `(q_1..q_n, p_1..p_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseSpace {
    coordinates: Vec<String>,
    momenta: Vec<String>,
}

impl PhaseSpace {
    pub fn new<S: Into<String>>(
        coordinates: impl IntoIterator<Item = S>,
        momenta: impl IntoIterator<Item = S>,
    ) -> Result<Self, AlgebraError> {
        let coordinates: Vec<String> = coordinates.into_iter().map(Into::into).collect();
        let momenta: Vec<String> = momenta.into_iter().map(Into::into).collect();
        if coordinates.is_empty() {
            return Err(AlgebraError::InvalidPhaseSpace("at least one canonical pair is required".into()));
        }
        if coordinates.len() != momenta.len() {
            return Err(AlgebraError::InvalidPhaseSpace(format!(
                "{} coordinates but {} momenta",
                coordinates.len(),
                momenta.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in coordinates.iter().chain(&momenta) {
            if name.is_empty() {
                return Err(AlgebraError::InvalidPhaseSpace("empty operator name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::InvalidPhaseSpace(format!("duplicate operator name `{name}`")));
            }
        }
        Ok(PhaseSpace { coordinates, momenta })
    }

    /// Builds a space from `(coordinate, momentum)` pairs.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, S)>) -> Result<Self, AlgebraError> {
        let (q, p): (Vec<String>, Vec<String>) = pairs.into_iter().map(|(a, b)| (a.into(), b.into())).unzip();
        Self::new(q, p)
    }

    /// Number of canonical pairs.
    pub fn pairs(&self) -> usize {
        self.coordinates.len()
    }

    /// Size of the operator basis, `2n`.
    pub fn dim(&self) -> usize {
        2 * self.pairs()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn momenta(&self) -> &[String] {
        &self.momenta
    }

    pub fn basis_name(&self, index: usize) -> &str {
        let n = self.pairs();
        if index < n {
            &self.coordinates[index]
        } else {
            &self.momenta[index - n]
        }
    }

    pub fn basis_names(&self) -> impl Iterator<Item = &str> {
        self.coordinates.iter().chain(&self.momenta).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names().position(|b| b == name)
    }

    pub fn is_momentum(&self, index: usize) -> bool {
        index >= self.pairs()
    }

    /// The symplectic form `J` with `J[a][n+a] = 1`, `J[n+a][a] = -1`.
    pub fn symplectic_form(&self) -> ExactMatrix {
        let n = self.pairs();
        let mut j = ExactMatrix::zeros(2 * n);
        for a in 0..n {
            j[(a, n + a)] = GaussianRational::one();
            j[(n + a, a)] = -GaussianRational::one();
        }
        j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn symplectic_form_squares_to_minus_identity() {
        for n in 1..=5 {
            let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
            let moms: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let space = PhaseSpace::new(names, moms).unwrap();
            let j = space.symplectic_form();
            assert_eq!(j.transpose(), j.scale(&-GaussianRational::one()));
            let mut sq = j.mul(&j);
            sq.add_diagonal(&GaussianRational::one());
            assert!(sq.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rejects_bad_names() {
        assert!(PhaseSpace::new(["x", "x"], ["p1", "p2"]).is_err());
        assert!(PhaseSpace::new(["x"], ["x"]).is_err());
        assert!(PhaseSpace::new(["x", "y"], ["p"]).is_err());
        assert!(PhaseSpace::new(Vec::<String>::new(), vec![]).is_err());
        assert!(PhaseSpace::new([""], ["p"]).is_err());
    }

    #[test]
    fn basis_order_is_coordinates_then_momenta() {
        let s = PhaseSpace::from_pairs([("x", "p_x"), ("y", "p_y")]).unwrap();
        let names: Vec<&str> = s.basis_names().collect();
        assert_eq!(names, ["x", "y", "p_x", "p_y"]);
        assert_eq!(s.index_of("p_x"), Some(2));
        assert!(s.is_momentum(3) && !s.is_momentum(1));
    }
}
