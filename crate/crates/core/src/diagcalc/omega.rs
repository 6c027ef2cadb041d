use crate::fieldlin::{self as fl, Field, LinMap, Quotient, Subspace};

use super::square::{cokernel, diagram_coker, diagram_ker, SquareDiagram};
use super::DiagError;

/// Three composable maps `A → B → C → D`.
#[derive(Clone, Debug)]
pub struct TripleComposite<F: Field> {
    pub alpha: LinMap<F>,
    pub beta: LinMap<F>,
    pub gamma: LinMap<F>,
}

impl<F: Field> TripleComposite<F> {
    pub fn new(alpha: LinMap<F>, beta: LinMap<F>, gamma: LinMap<F>) -> Result<Self, DiagError> {
        if alpha.codomain() != beta.domain() || beta.codomain() != gamma.domain() {
            return Err(DiagError::NotComposable);
        }
        Ok(TripleComposite { alpha, beta, gamma })
    }

    /// `(γ*, β*, α*)`.
    pub fn dual(&self) -> TripleComposite<F> {
        TripleComposite {
            alpha: self.gamma.transpose(),
            beta: self.beta.transpose(),
            gamma: self.alpha.transpose(),
        }
    }

    pub(crate) fn ba(&self) -> LinMap<F> {
        self.beta.compose(&self.alpha).expect("composable")
    }

    pub(crate) fn gb(&self) -> LinMap<F> {
        self.gamma.compose(&self.beta).expect("composable")
    }

    pub(crate) fn gba(&self) -> LinMap<F> {
        self.gamma.compose(&self.ba()).expect("composable")
    }
}

/// `ω̂(α, β, γ) = ker(γβ) / (α(ker γβα) + ker β)`, a quotient of a subspace
/// of `B`.
#[derive(Clone, Debug)]
pub struct OmegaHat<F: Field> {
    pub quotient: Quotient<F>,
}

impl<F: Field> OmegaHat<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// `ω̲(α, β, γ)`, a subspace of `coker(βα)`.
#[derive(Clone, Debug)]
pub struct OmegaUnder<F: Field> {
    pub coker: Quotient<F>,
    pub sub: Subspace<F>,
}

impl<F: Field> OmegaUnder<F> {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

/// ω̂ as the cokernel of the square
/// `ker βα → ker γβα → ker γβ`, `ker βα → ker β → ker γβ`.
pub fn omega_hat<F: Field>(t: &TripleComposite<F>) -> Result<OmegaHat<F>, DiagError> {
    let k_ba = fl::kernel(&t.ba());
    let k_gba = fl::kernel(&t.gba());
    let k_b = fl::kernel(&t.beta);
    let k_gb = fl::kernel(&t.gb());
    let ident_a = LinMap::identity(t.alpha.field().clone(), t.alpha.domain());
    let ident_b = LinMap::identity(t.alpha.field().clone(), t.beta.domain());
    let i1 = fl::induced_restrict(&ident_a, &k_ba, &k_gba)?;
    let j1 = fl::induced_restrict(&t.alpha, &k_ba, &k_b)?;
    let j2 = fl::induced_restrict(&t.alpha, &k_gba, &k_gb)?;
    let i2 = fl::induced_restrict(&ident_b, &k_b, &k_gb)?;
    let square = SquareDiagram::new(i1, j1, j2, i2)?;
    let coker = diagram_coker(&square)?;
    // Re-express the cokernel as a quotient of ker γβ inside B so that maps
    // induced by maps of B descend directly.
    let denom = Subspace::spanned_by(
        t.alpha.field().clone(),
        t.beta.domain(),
        coker.denominator().basis().iter().map(|v| k_gb.element(v)),
    );
    let quotient = fl::quotient(&k_gb, &denom)?;
    debug_assert_eq!(quotient.dim(), coker.dim());
    Ok(OmegaHat { quotient })
}

/// ω̲ as the kernel of the square
/// `coker βα → coker γβα → coker γβ`, `coker βα → coker β → coker γβ`.
pub fn omega_under<F: Field>(t: &TripleComposite<F>) -> Result<OmegaUnder<F>, DiagError> {
    let c_ba = cokernel(&t.ba())?;
    let c_gba = cokernel(&t.gba())?;
    let c_b = cokernel(&t.beta)?;
    let c_gb = cokernel(&t.gb())?;
    let ident_c = LinMap::identity(t.beta.field().clone(), t.beta.codomain());
    let ident_d = LinMap::identity(t.beta.field().clone(), t.gamma.codomain());
    let i1 = fl::induced_descend(&t.gamma, &c_ba, &c_gba)?;
    let j1 = fl::induced_descend(&ident_c, &c_ba, &c_b)?;
    let j2 = fl::induced_descend(&ident_d, &c_gba, &c_gb)?;
    let i2 = fl::induced_descend(&t.gamma, &c_b, &c_gb)?;
    let square = SquareDiagram::new(i1, j1, j2, i2)?;
    let sub = diagram_ker(&square)?;
    Ok(OmegaUnder { coker: c_ba, sub })
}

/// Map `ω̂(src) → ω̂(tgt)` induced by a map between the middle-left spaces.
pub fn omega_hat_induced<F: Field>(
    m: &LinMap<F>,
    src: &OmegaHat<F>,
    tgt: &OmegaHat<F>,
) -> Result<LinMap<F>, DiagError> {
    Ok(fl::induced_descend(m, &src.quotient, &tgt.quotient)?)
}

/// Map `ω̲(src) → ω̲(tgt)` induced by a map between the middle-right spaces.
pub fn omega_under_induced<F: Field>(
    m: &LinMap<F>,
    src: &OmegaUnder<F>,
    tgt: &OmegaUnder<F>,
) -> Result<LinMap<F>, DiagError> {
    let on_coker = fl::induced_descend(m, &src.coker, &tgt.coker)?;
    Ok(fl::induced_restrict(&on_coker, &src.sub, &tgt.sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::{AmbientSpace, PrimeField};

    fn line_triple(a: u64, b: u64, c: u64) -> TripleComposite<PrimeField> {
        let f = PrimeField::new(2).unwrap();
        let s: Vec<_> = (0..4).map(|_| AmbientSpace::new(1)).collect();
        TripleComposite::new(
            LinMap::from_rows_between(f, s[0], s[1], &[vec![a]]),
            LinMap::from_rows_between(f, s[1], s[2], &[vec![b]]),
            LinMap::from_rows_between(f, s[2], s[3], &[vec![c]]),
        )
        .unwrap()
    }

    #[test]
    fn omega_hat_examples() {
        assert_eq!(omega_hat(&line_triple(1, 0, 0)).unwrap().dim(), 0);
        assert_eq!(omega_hat(&line_triple(0, 0, 1)).unwrap().dim(), 0);
        assert_eq!(omega_hat(&line_triple(0, 1, 0)).unwrap().dim(), 1);
    }

    #[test]
    fn omega_under_examples() {
        assert_eq!(omega_under(&line_triple(0, 1, 0)).unwrap().dim(), 1);
        assert_eq!(omega_under(&line_triple(1, 1, 1)).unwrap().dim(), 0);
        let t = line_triple(0, 1, 0);
        assert_eq!(omega_under(&t.dual()).unwrap().dim(), omega_hat(&t).unwrap().dim());
    }
}
