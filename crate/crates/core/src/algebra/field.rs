//! Differential fields in `(z, zb)` and vectors over them.
//!
//! The geometric layers are written once against [`DiffField`] and run either exactly on
//! [`BiRat`] or numerically on [`Jet`](super::jet::Jet) at a sample point.

use std::fmt::Debug;

use super::birat::BiRat;
use super::coeff::Coeff;
use super::AlgebraError;

pub trait DiffField: Clone + Debug + Send + Sync {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &Coeff) -> Self;
    fn recip(&self) -> Result<Self, AlgebraError>;
    fn d_z(&self) -> Self;
    fn d_zb(&self) -> Self;
    fn conjugate(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn constant_like(&self, c: &Coeff) -> Self;

    fn ratio(&self, n: i64, d: i64) -> Self {
        self.scaled(&Coeff::ratio(n, d))
    }

    fn divide(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.times(&o.recip()?))
    }

    fn square(&self) -> Self {
        self.times(self)
    }
}

impl DiffField for BiRat {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn recip(&self) -> Result<Self, AlgebraError> {
        BiRat::recip(self)
    }
    fn d_z(&self) -> Self {
        self.dz()
    }
    fn d_zb(&self) -> Self {
        self.dzb()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn is_zero(&self) -> bool {
        BiRat::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BiRat::zero()
    }
    fn constant_like(&self, c: &Coeff) -> Self {
        BiRat::constant(c.clone())
    }
}

/// A vector with components in a differential field.
#[derive(Clone, Debug)]
pub struct FieldVec<F>(pub Vec<F>);

pub type VecBiRat = FieldVec<BiRat>;

impl<F: DiffField> FieldVec<F> {
    pub fn new(v: Vec<F>) -> Self {
        FieldVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> &F {
        &self.0[i]
    }

    pub fn zeros_like(&self) -> Self {
        FieldVec(self.0.iter().map(|f| f.zero_like()).collect())
    }

    /// Complex-bilinear Euclidean product.
    pub fn dot(&self, o: &Self) -> Result<F, AlgebraError> {
        if self.dim() != o.dim() || self.dim() == 0 {
            return Err(AlgebraError::DimensionMismatch);
        }
        Ok(self.bilinear(o, false))
    }

    /// Euclidean bilinear product; panics on unequal dimensions.
    pub fn edot(&self, o: &Self) -> F {
        assert_eq!(self.dim(), o.dim(), "dot product of unequal dimensions");
        self.bilinear(o, false)
    }

    /// Bilinear product of signature `(n - 1, 1)`: the last component counts negatively.
    pub fn lorentz(&self, o: &Self) -> F {
        assert_eq!(self.dim(), o.dim(), "Lorentz product of unequal dimensions");
        self.bilinear(o, true)
    }

    fn bilinear(&self, o: &Self, lorentz: bool) -> F {
        let n = self.dim();
        let mut acc = self.0[0].times(&o.0[0]);
        for i in 1..n {
            let t = self.0[i].times(&o.0[i]);
            acc = if lorentz && i == n - 1 { acc.minus(&t) } else { acc.plus(&t) };
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldVec(self.0.iter().zip(&o.0).map(|(a, b)| a.plus(b)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldVec(self.0.iter().zip(&o.0).map(|(a, b)| a.minus(b)).collect())
    }

    pub fn neg(&self) -> Self {
        FieldVec(self.0.iter().map(|a| a.negate()).collect())
    }

    /// Multiplies every component by the field element `f`.
    pub fn times(&self, f: &F) -> Self {
        FieldVec(self.0.iter().map(|a| a.times(f)).collect())
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        FieldVec(self.0.iter().map(|a| a.scaled(c)).collect())
    }

    pub fn d_z(&self) -> Self {
        FieldVec(self.0.iter().map(|a| a.d_z()).collect())
    }

    pub fn d_zb(&self) -> Self {
        FieldVec(self.0.iter().map(|a| a.d_zb()).collect())
    }

    pub fn conjugate(&self) -> Self {
        FieldVec(self.0.iter().map(|a| a.conjugate()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// `sum_k f_k v_k`
    pub fn combo(terms: &[(&F, &FieldVec<F>)]) -> Self {
        let mut acc = terms[0].1.times(terms[0].0);
        for (f, v) in &terms[1..] {
            acc = acc.add(&v.times(f));
        }
        acc
    }
}

impl FieldVec<BiRat> {
    pub fn from_rats(v: &[super::rat::Rat]) -> Self {
        FieldVec(v.iter().map(BiRat::from_rat).collect())
    }

    pub fn eval_c64(&self, z: num_complex::Complex64) -> Vec<num_complex::Complex64> {
        self.0.iter().map(|f| f.eval_c64(z)).collect()
    }

    pub fn invert_chart(&self) -> Self {
        FieldVec(self.0.iter().map(|f| f.invert_chart()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_vector() {
        let e1 = FieldVec(vec![
            BiRat::one(),
            BiRat::constant(Coeff::i()),
            BiRat::zero(),
            BiRat::zero(),
            BiRat::zero(),
        ]);
        assert!(e1.dot(&e1).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = FieldVec(vec![BiRat::one()]);
        let b = FieldVec(vec![BiRat::one(), BiRat::one()]);
        assert_eq!(a.dot(&b).unwrap_err(), AlgebraError::DimensionMismatch);
    }
}
