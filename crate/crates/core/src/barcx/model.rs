//! Finite-dimensional commutative DGA models with basis in degrees 0, 1, 2.

use crate::error::{Error, Result};
use crate::tensoralg::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse vector over the model basis.
pub type Vector = BTreeMap<usize, Rational>;

/// Which of the shipped families a model belongs to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `A^0 = Q`, `A^1` spanned by `xi_j, eta_j, zeta_k`, `A^2 = 0`, `d = 0`.
    OpenSurface { genus: usize, punctures: usize },
    /// Cohomology of a closed surface, `xi_j eta_j = omega`.
    ClosedSurface { genus: usize },
    Custom,
}

/// A graded basis, a differential, a multiplication table and an
/// augmentation. Basis element 0 is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaModel {
    kind: ModelKind,
    names: Vec<String>,
    degrees: Vec<u8>,
    differential: Vec<Vector>,
    products: Vec<Vec<Vector>>,
    augmentation: Vec<Rational>,
}

fn add_into(v: &mut Vector, i: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

fn koszul(p: u8, q: u8) -> Rational {
    if (p as u32 * q as u32) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl DgaModel {
    /// Builds and validates a model.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u8>,
        differential: Vec<Vector>,
        products: Vec<Vec<Vector>>,
        augmentation: Vec<Rational>,
    ) -> Result<Self> {
        let m = DgaModel {
            kind: ModelKind::Custom,
            names,
            degrees,
            differential,
            products,
            augmentation,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn open_surface(genus: usize, punctures: usize) -> Self {
        let mut names = vec!["1".to_string()];
        names.extend((1..=genus).map(|j| format!("xi{j}")));
        names.extend((1..=genus).map(|j| format!("eta{j}")));
        names.extend((1..=punctures).map(|k| format!("zeta{k}")));
        let dim = names.len();
        let mut degrees = vec![1u8; dim];
        degrees[0] = 0;
        let mut m = Self::with_unit(names, degrees);
        m.kind = ModelKind::OpenSurface { genus, punctures };
        m
    }

    pub fn closed_surface(genus: usize) -> Self {
        let mut names = vec!["1".to_string()];
        names.extend((1..=genus).map(|j| format!("xi{j}")));
        names.extend((1..=genus).map(|j| format!("eta{j}")));
        names.push("omega".to_string());
        let dim = names.len();
        let mut degrees = vec![1u8; dim];
        degrees[0] = 0;
        degrees[dim - 1] = 2;
        let mut m = Self::with_unit(names, degrees);
        let top = dim - 1;
        for j in 1..=genus {
            let (xi, eta) = (j, genus + j);
            m.products[xi][eta].insert(top, Rational::one());
            m.products[eta][xi].insert(top, -Rational::one());
        }
        m.kind = ModelKind::ClosedSurface { genus };
        m
    }

    /// Zero differential, unit products only.
    fn with_unit(names: Vec<String>, degrees: Vec<u8>) -> Self {
        let dim = names.len();
        let mut products = vec![vec![Vector::new(); dim]; dim];
        for (i, row) in products.iter_mut().enumerate() {
            row[0].insert(i, Rational::one());
        }
        for i in 0..dim {
            products[0][i].insert(i, Rational::one());
        }
        let mut augmentation = vec![Rational::zero(); dim];
        augmentation[0] = Rational::one();
        DgaModel {
            kind: ModelKind::Custom,
            names,
            degrees,
            differential: vec![Vector::new(); dim],
            products,
            augmentation,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn d(&self, i: usize) -> &Vector {
        &self.differential[i]
    }

    pub fn differential(&self) -> &[Vector] {
        &self.differential
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i][j]
    }

    pub fn augmentation(&self, i: usize) -> &Rational {
        &self.augmentation[i]
    }

    /// Basis elements of `A^0`.
    pub fn degree_zero(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == 0).collect()
    }

    /// For the open-surface model, the generator index (`x`, `y`, `z`
    /// order) corresponding to a degree-one basis element.
    pub fn generator_of(&self, i: usize) -> Option<usize> {
        match self.kind {
            ModelKind::OpenSurface { genus, punctures } if (1..=2 * genus + punctures).contains(&i) => {
                Some(i - 1)
            }
            _ => None,
        }
    }

    pub fn letter_of_generator(&self, gen: usize) -> Option<usize> {
        match self.kind {
            ModelKind::OpenSurface { genus, punctures } if gen < 2 * genus + punctures => Some(gen + 1),
            _ => None,
        }
    }

    pub fn mul_vec(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, ca) in a {
            for (j, cb) in b {
                for (k, c) in &self.products[*i][*j] {
                    add_into(&mut out, *k, ca * cb * c);
                }
            }
        }
        out
    }

    pub fn d_vec(&self, a: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, ca) in a {
            for (k, c) in &self.differential[*i] {
                add_into(&mut out, *k, ca * c);
            }
        }
        out
    }

    fn unit_vec(i: usize) -> Vector {
        Vector::from([(i, Rational::one())])
    }

    /// Checks shape, degrees, unit, graded commutativity, associativity,
    /// `d^2 = 0`, the Leibniz rule and the augmentation.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let bad = |m: String| Err(Error::domain(m));
        if dim == 0 {
            return bad("model has an empty basis".into());
        }
        if self.degrees.len() != dim
            || self.differential.len() != dim
            || self.products.len() != dim
            || self.augmentation.len() != dim
            || self.products.iter().any(|r| r.len() != dim)
        {
            return Err(Error::usage("model tables have inconsistent sizes"));
        }
        if self.degrees.iter().any(|&d| d > 2) {
            return bad("basis degrees must lie in 0..=2".into());
        }
        if self.degrees[0] != 0 {
            return bad("unit must have degree 0".into());
        }
        let in_range = |v: &Vector| v.keys().all(|&k| k < dim);
        for i in 0..dim {
            if !in_range(&self.differential[i]) {
                return Err(Error::usage("differential refers to a missing basis element"));
            }
            if self.differential[i]
                .keys()
                .any(|&k| self.degrees[k] != self.degrees[i] + 1)
            {
                return bad(format!("d({}) has the wrong degree", self.names[i]));
            }
            if !self.augmentation[i].is_zero() && self.degrees[i] != 0 {
                return bad("augmentation must vanish in positive degree".into());
            }
            for j in 0..dim {
                let p = &self.products[i][j];
                if !in_range(p) {
                    return Err(Error::usage("product refers to a missing basis element"));
                }
                if p.keys().any(|&k| self.degrees[k] != self.degrees[i] + self.degrees[j]) {
                    return bad(format!(
                        "{}·{} has the wrong degree",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }
        if !self.augmentation[0].is_one() {
            return bad("augmentation of the unit must be 1".into());
        }
        for i in 0..dim {
            let e = Self::unit_vec(i);
            if self.products[0][i] != e || self.products[i][0] != e {
                return bad(format!("element 0 is not a unit for {}", self.names[i]));
            }
            if !self.d_vec(&self.differential[i]).is_empty() {
                return bad(format!("d^2 does not vanish on {}", self.names[i]));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let (ei, ej) = (Self::unit_vec(i), Self::unit_vec(j));
                let ij = &self.products[i][j];
                let sign = koszul(self.degrees[i], self.degrees[j]);
                let ji: Vector = self.products[j][i]
                    .iter()
                    .map(|(k, c)| (*k, c * &sign))
                    .collect();
                if *ij != ji {
                    return bad(format!(
                        "{} and {} do not graded-commute",
                        self.names[i], self.names[j]
                    ));
                }
                // d(ab) = da b + (-1)^|a| a db
                let lhs = self.d_vec(ij);
                let mut rhs = self.mul_vec(&self.differential[i], &ej);
                let sa = koszul(self.degrees[i], 1);
                for (k, c) in self.mul_vec(&ei, &self.differential[j]) {
                    add_into(&mut rhs, k, c * &sa);
                }
                if lhs != rhs {
                    return bad(format!(
                        "Leibniz rule fails on {}·{}",
                        self.names[i], self.names[j]
                    ));
                }
                // the augmentation is multiplicative
                let eps_ij: Rational = ij.iter().map(|(k, c)| c * &self.augmentation[*k]).sum();
                if eps_ij != &self.augmentation[i] * &self.augmentation[j] {
                    return bad("augmentation is not multiplicative".into());
                }
                for k in 0..dim {
                    let left = self.mul_vec(ij, &Self::unit_vec(k));
                    let right = self.mul_vec(&ei, &self.products[j][k]);
                    if left != right {
                        return bad(format!(
                            "product is not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-tags a validated custom model as one of the shipped families
    /// when it coincides with it.
    pub fn recognise(mut self) -> Self {
        if self.kind != ModelKind::Custom {
            return self;
        }
        let dim = self.dim();
        let ones = self.degrees.iter().filter(|&&d| d == 1).count();
        for g in 0..=ones / 2 {
            let open = DgaModel::open_surface(g, ones - 2 * g);
            if open.dim() == dim && open.same_tables(&self) {
                self.kind = open.kind;
                return self;
            }
        }
        let closed = DgaModel::closed_surface(ones / 2);
        if closed.dim() == dim && closed.same_tables(&self) {
            self.kind = closed.kind;
        }
        self
    }

    fn same_tables(&self, other: &DgaModel) -> bool {
        self.names == other.names
            && self.degrees == other.degrees
            && self.differential == other.differential
            && self.products == other.products
            && self.augmentation == other.augmentation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_models_validate() {
        for g in 0..3 {
            for n in 0..3 {
                DgaModel::open_surface(g, n).validate().unwrap();
            }
            DgaModel::closed_surface(g).validate().unwrap();
        }
    }

    #[test]
    fn broken_models_are_rejected() {
        let m = DgaModel::closed_surface(1);
        let mut products = m.products.clone();
        // make xi1·eta1 = eta1·xi1, breaking graded commutativity
        products[2][1] = products[1][2].clone();
        let r = DgaModel::new(
            m.names.clone(),
            m.degrees.clone(),
            m.differential.clone(),
            products,
            m.augmentation.clone(),
        );
        assert!(matches!(r, Err(Error::Domain(_))));

        let mut diff = m.differential.clone();
        diff[1].insert(2, Rational::one());
        let r = DgaModel::new(
            m.names.clone(),
            m.degrees.clone(),
            diff,
            m.products.clone(),
            m.augmentation.clone(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn recognises_shipped_families() {
        let m = DgaModel::closed_surface(2);
        let copy = DgaModel::new(
            m.names.clone(),
            m.degrees.clone(),
            m.differential.clone(),
            m.products.clone(),
            m.augmentation.clone(),
        )
        .unwrap()
        .recognise();
        assert_eq!(copy.kind(), ModelKind::ClosedSurface { genus: 2 });
        let o = DgaModel::open_surface(1, 2);
        let copy = DgaModel::new(
            o.names.clone(),
            o.degrees.clone(),
            o.differential.clone(),
            o.products.clone(),
            o.augmentation.clone(),
        )
        .unwrap()
        .recognise();
        assert_eq!(copy.kind(), ModelKind::OpenSurface { genus: 1, punctures: 2 });
    }
}
