//! Level homologies of a window and the subquotients built from them.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{Signed, Zero};

use crate::covercomplex::{CellSet, CoverData, PairHomology, Window, Q};
use crate::fieldlin::{self as fl, Field, LinMap, Quotient, Subspace};

use super::{ConfigError, Variant};

/// Cover data together with one finite window of sheets.
#[derive(Clone, Debug)]
pub struct Setting {
    pub data: CoverData,
    pub window: Window,
}

impl Setting {
    pub fn new(data: CoverData, sheets: i64) -> Result<Rc<Self>, ConfigError> {
        let window = Window::with_sheets(&data, sheets)?;
        Ok(Rc::new(Setting { data, window }))
    }

    pub fn period(&self) -> &Q {
        &self.data.period
    }

    pub fn gap(&self) -> &Q {
        &self.data.critical.gap
    }

    /// All critical values `c + kp` in `[lo, hi]`, ascending.
    pub fn critical_between(&self, lo: &Q, hi: &Q) -> Vec<Q> {
        let p = self.period();
        let vals = &self.data.critical.values;
        if !p.is_positive() {
            return vals.iter().filter(|v| lo <= *v && *v <= hi).cloned().collect();
        }
        let mut out = Vec::new();
        let mut k = (lo / p).floor() - Q::from_integer(1.into());
        loop {
            let shift = &k * p;
            if &shift > hi {
                break;
            }
            for v in vals {
                let x = v + &shift;
                if lo <= &x && &x <= hi {
                    out.push(x);
                }
            }
            k += Q::from_integer(1.into());
        }
        out
    }

    /// Critical values that index one representative per Γ-orbit: `[0, p)`
    /// with a period, all of them without.
    pub fn fundamental_critical(&self) -> Vec<Q> {
        self.data.critical.values.clone()
    }

    /// Critical values at which the window is trusted.
    pub fn safe_critical(&self) -> Vec<Q> {
        match self.window.safe_range() {
            Some((lo, hi)) => self.critical_between(&lo, &hi),
            None => self.data.critical.values.clone(),
        }
    }

    pub fn is_critical(&self, t: &Q) -> bool {
        let p = self.period();
        let x = crate::covercomplex::reduce_mod(t, p);
        self.data.critical.values.binary_search(&x).is_ok()
    }
}

/// Homology of one level pair and its map to the ambient homology.
#[derive(Clone, Debug)]
pub struct Level<F: Field> {
    pub cells: CellSet,
    pub hom: PairHomology<F>,
    pub to_ambient: LinMap<F>,
    pub image: Subspace<F>,
}

/// Degree-`r` homology of a window in one variant, with cached levels.
///
/// Standard variant: the ambient is `H_r(W)`, sublevels `H_r(W_a)` and
/// superlevels `H_r(W^b)`. BM variant: the ambient is `H_r(W, Bot ∪ Top)`,
/// sublevels are taken rel `Bot` and superlevels rel `Top`.
pub struct Engine<F: Field> {
    field: F,
    pub setting: Rc<Setting>,
    pub variant: Variant,
    pub r: usize,
    heights: Vec<Q>,
    lbot: CellSet,
    ltop: CellSet,
    lrel: CellSet,
    ambient: PairHomology<F>,
    subs: RefCell<HashMap<usize, Rc<Level<F>>>>,
    sups: RefCell<HashMap<usize, Rc<Level<F>>>>,
    incl: RefCell<HashMap<(usize, usize), Rc<LinMap<F>>>>,
    fspaces: RefCell<HashMap<(usize, usize), Rc<Subspace<F>>>>,
}

impl<F: Field> Engine<F> {
    pub fn new(field: F, setting: Rc<Setting>, variant: Variant, r: usize) -> Result<Self, ConfigError> {
        let w = &setting.window;
        let (lbot, ltop) = match variant {
            Variant::Standard => (w.empty(), w.empty()),
            Variant::Bm => (w.bottom(), w.top()),
        };
        let lrel = lbot.union(&ltop);
        let ambient = PairHomology::compute(&field, w, r, &w.full(), &lrel)?;
        Ok(Engine {
            heights: w.vertex_heights(),
            field,
            setting,
            variant,
            r,
            lbot,
            ltop,
            lrel,
            ambient,
            subs: RefCell::new(HashMap::new()),
            sups: RefCell::new(HashMap::new()),
            incl: RefCell::new(HashMap::new()),
            fspaces: RefCell::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn window(&self) -> &Window {
        &self.setting.window
    }

    pub fn ambient(&self) -> &PairHomology<F> {
        &self.ambient
    }

    /// Cells dropped from the ambient chains (empty in the standard variant).
    pub fn ambient_rel(&self) -> &CellSet {
        &self.lrel
    }

    pub fn bottom_rel(&self) -> &CellSet {
        &self.lbot
    }

    /// `gap/3`, the offset realizing `<a` and `>b`.
    pub fn eps(&self) -> Q {
        self.setting.gap() / Q::from_integer(3.into())
    }

    /// Sublevel key: the number of vertex heights `≤ a`. `None` is `+∞`.
    pub fn sub_key(&self, a: Option<&Q>) -> usize {
        match a {
            Some(a) => self.heights.partition_point(|h| h <= a),
            None => self.heights.len(),
        }
    }

    /// Superlevel key: the number of vertex heights `< b`.
    pub fn sup_key(&self, b: &Q) -> usize {
        self.heights.partition_point(|h| h < b)
    }

    fn sub_by_key(&self, key: usize) -> Result<Rc<Level<F>>, ConfigError> {
        if let Some(l) = self.subs.borrow().get(&key) {
            return Ok(l.clone());
        }
        let w = self.window();
        let cells = if key == self.heights.len() {
            w.full()
        } else if key == 0 {
            w.empty()
        } else {
            w.sublevel(&self.heights[key - 1])
        };
        let level = Rc::new(self.level(cells, &self.lbot)?);
        self.subs.borrow_mut().insert(key, level.clone());
        Ok(level)
    }

    fn sup_by_key(&self, key: usize) -> Result<Rc<Level<F>>, ConfigError> {
        if let Some(l) = self.sups.borrow().get(&key) {
            return Ok(l.clone());
        }
        let w = self.window();
        let cells = if key == self.heights.len() {
            w.empty()
        } else {
            w.superlevel(&self.heights[key])
        };
        let level = Rc::new(self.level(cells, &self.ltop)?);
        self.sups.borrow_mut().insert(key, level.clone());
        Ok(level)
    }

    fn level(&self, cells: CellSet, rel: &CellSet) -> Result<Level<F>, ConfigError> {
        let hom = PairHomology::compute(&self.field, self.window(), self.r, &cells, rel)?;
        let to_ambient = hom.map_to(&self.ambient, &self.lrel)?;
        let image = fl::image(&to_ambient);
        Ok(Level {
            cells,
            hom,
            to_ambient,
            image,
        })
    }

    /// `H_r(W_a)` (rel `Bot` for BM); `None` is the whole window.
    pub fn sublevel(&self, a: Option<&Q>) -> Result<Rc<Level<F>>, ConfigError> {
        self.sub_by_key(self.sub_key(a))
    }

    /// `H_r(W^b)` (rel `Top` for BM).
    pub fn superlevel(&self, b: &Q) -> Result<Rc<Level<F>>, ConfigError> {
        self.sup_by_key(self.sup_key(b))
    }

    /// `i_x^y: H_r(W_x) → H_r(W_y)` for `x ≤ y`.
    pub fn inclusion(&self, x: Option<&Q>, y: Option<&Q>) -> Result<Rc<LinMap<F>>, ConfigError> {
        let (kx, ky) = (self.sub_key(x), self.sub_key(y));
        if kx > ky {
            return Err(ConfigError::BadBox("inclusion goes downwards".into()));
        }
        if let Some(m) = self.incl.borrow().get(&(kx, ky)) {
            return Ok(m.clone());
        }
        let src = self.sub_by_key(kx)?;
        let tgt = self.sub_by_key(ky)?;
        let m = Rc::new(src.hom.map_to(&tgt.hom, &self.lbot)?);
        self.incl.borrow_mut().insert((kx, ky), m.clone());
        Ok(m)
    }

    /// `𝕀_a`.
    pub fn i_sub(&self, a: &Q) -> Result<Subspace<F>, ConfigError> {
        Ok(self.sublevel(Some(a))?.image.clone())
    }

    /// `𝕀^b`.
    pub fn i_sup(&self, b: &Q) -> Result<Subspace<F>, ConfigError> {
        Ok(self.superlevel(b)?.image.clone())
    }

    /// `𝔽(a, b) = 𝕀_a ∩ 𝕀^b` inside the ambient homology.
    pub fn f_space(&self, a: &Q, b: &Q) -> Result<Rc<Subspace<F>>, ConfigError> {
        let key = (self.sub_key(Some(a)), self.sup_key(b));
        if let Some(s) = self.fspaces.borrow().get(&key) {
            return Ok(s.clone());
        }
        let s = Rc::new(fl::intersect(
            &self.sub_by_key(key.0)?.image,
            &self.sup_by_key(key.1)?.image,
        )?);
        self.fspaces.borrow_mut().insert(key, s.clone());
        Ok(s)
    }

    /// `𝔾(a, b) = H / (𝕀_a + 𝕀^b)`.
    pub fn g_space(&self, a: &Q, b: &Q) -> Result<Quotient<F>, ConfigError> {
        let denom = fl::sum(&self.i_sub(a)?, &self.i_sup(b)?)?;
        let full = Subspace::full(self.field.clone(), self.ambient.space());
        Ok(fl::quotient(&full, &denom)?)
    }

    /// `𝕋(a, b) = ker i_a^b ⊆ H_r(W_a)`; `b = None` is `+∞`.
    pub fn t_space(&self, a: &Q, b: Option<&Q>) -> Result<Subspace<F>, ConfigError> {
        Ok(fl::kernel(&*self.inclusion(Some(a), b)?))
    }

    /// `ℂ(a, b) = coker i_a^b`.
    pub fn c_space(&self, a: &Q, b: Option<&Q>) -> Result<Quotient<F>, ConfigError> {
        Ok(crate::diagcalc::cokernel(&*self.inclusion(Some(a), b)?)?)
    }

    /// `δ̂(a, b) = 𝔽(a,b) / (𝔽(a−ε, b) + 𝔽(a, b+ε))`.
    pub fn delta_hat_at(&self, a: &Q, b: &Q, eps: &Q) -> Result<Quotient<F>, ConfigError> {
        let num = self.f_space(a, b)?;
        let den = fl::sum(&*self.f_space(&(a - eps), b)?, &*self.f_space(a, &(b + eps))?)?;
        Ok(fl::quotient(&num, &den)?)
    }

    /// `γ̂(a, b) = 𝕋(a,b) / (i 𝕋(a−ε, b) + 𝕋(a, b−ε))` for `a < b`.
    pub fn gamma_hat_at(&self, a: &Q, b: &Q, eps: &Q) -> Result<Quotient<F>, ConfigError> {
        if a >= b {
            return Err(ConfigError::BadBox(format!("γ̂ needs a < b, got ({a}, {b})")));
        }
        let num = self.t_space(a, Some(b))?;
        let below = a - eps;
        let pushed = fl::image_of(
            &*self.inclusion(Some(&below), Some(a))?,
            &self.t_space(&below, Some(b))?,
        )?;
        let bm = b - eps;
        let shorter = if &bm > a {
            self.t_space(a, Some(&bm))?
        } else {
            Subspace::zero(self.field.clone(), num.ambient())
        };
        let den = fl::sum(&pushed, &shorter)?;
        Ok(fl::quotient(&num, &den)?)
    }

    /// δ̂ at `ε = gap/3`, confirmed at `gap/6`.
    pub fn delta_hat(&self, a: &Q, b: &Q) -> Result<Quotient<F>, ConfigError> {
        let eps = self.eps();
        let q = self.delta_hat_at(a, b, &eps)?;
        let again = self.delta_hat_at(a, b, &(&eps / Q::from_integer(2.into())))?;
        if again.dim() != q.dim() {
            return Err(ConfigError::InternalMismatch(format!(
                "δ̂({a}, {b}) changes between ε and ε/2"
            )));
        }
        Ok(q)
    }

    /// γ̂ at `ε = gap/3`, confirmed at `gap/6`.
    pub fn gamma_hat(&self, a: &Q, b: &Q) -> Result<Quotient<F>, ConfigError> {
        let eps = self.eps();
        let q = self.gamma_hat_at(a, b, &eps)?;
        let again = self.gamma_hat_at(a, b, &(&eps / Q::from_integer(2.into())))?;
        if again.dim() != q.dim() {
            return Err(ConfigError::InternalMismatch(format!(
                "γ̂({a}, {b}) changes between ε and ε/2"
            )));
        }
        Ok(q)
    }

    /// `𝕋(<a, a) = ker(H_r(W_{a−ε}) → H_r(W_a))`.
    pub fn t_before(&self, a: &Q) -> Result<Subspace<F>, ConfigError> {
        self.t_space(&(a - self.eps()), Some(a))
    }

    /// `λ̂(a)`: the image of `𝕋(α, a)` in `𝕋(<a, a)` for `α` low in the
    /// window. The images shrink as `α` descends; the two lowest must agree.
    pub fn lambda_hat(&self, a: &Q) -> Result<Subspace<F>, ConfigError> {
        let before = a - self.eps();
        let target = self.t_before(a)?;
        let alphas = self.lambda_levels(&before);
        let mut images: Vec<Subspace<F>> = Vec::new();
        for alpha in &alphas {
            let t = self.t_space(alpha, Some(a))?;
            let img = fl::image_of(&*self.inclusion(Some(alpha), Some(&before))?, &t)?;
            debug_assert!(img.is_subspace_of(&target));
            images.push(img);
        }
        match images.len() {
            0 => Ok(Subspace::zero(self.field.clone(), target.ambient())),
            1 => Ok(images.pop().expect("one image")),
            n => {
                if images[n - 1] != images[n - 2] {
                    return Err(ConfigError::NotStabilized);
                }
                Ok(images.pop().expect("nonempty"))
            }
        }
    }

    /// Descending levels used for the inverse limit below `x`: critical
    /// values from `x` down to one period below the safe range.
    fn lambda_levels(&self, x: &Q) -> Vec<Q> {
        let s = &self.setting;
        match s.window.safe_range() {
            None => {
                let lowest = s.data.critical.values.first().cloned().unwrap_or_else(Q::zero);
                vec![lowest - Q::from_integer(1.into())]
            }
            Some((lo, _)) => {
                let floor = &lo - s.period();
                let mut v: Vec<Q> = s.critical_between(&floor, x).into_iter().filter(|c| c < x).collect();
                v.reverse();
                v
            }
        }
    }

    /// `H_r(W_a, W_{a−ε})` in the standard variant and
    /// `H_r(W_a, W_{a−ε} ∪ Bot)` in the BM variant.
    pub fn pair_at(&self, a: &Q) -> Result<PairHomology<F>, ConfigError> {
        let k = self.sublevel(Some(a))?.cells.clone();
        let l = self.sublevel(Some(&(a - self.eps())))?.cells.union(&self.lbot);
        Ok(PairHomology::compute(&self.field, self.window(), self.r, &k, &l)?)
    }

    pub fn pair_cells(&self, a: &Q) -> Result<(CellSet, CellSet), ConfigError> {
        let k = self.sublevel(Some(a))?.cells.clone();
        let l = self.sublevel(Some(&(a - self.eps())))?.cells.union(&self.lbot);
        Ok((k, l))
    }
}
