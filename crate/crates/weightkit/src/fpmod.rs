//! Finitely presented modules over the active ring.
//!
//! A module is stored as a presentation (rows are relations among the chosen
//! generators) together with its invariant-factor normal form, which
//! determines the isomorphism class. Hom, Ext¹ and Tor₁ are computed two
//! ways: through the cyclic-summand tables on normal forms, and through the
//! presentation-level kernel/cokernel formulas; the two routes cross-check
//! each other in the test suites.

use crate::error::{Error, Result};
use crate::matrix::{linear_solve, smith_normal_form, Matrix};
use crate::ring::{RingElement, RingSpec};
use std::fmt;

/// A finitely presented module `R^gens / (row span of relations)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpModule {
    spec: RingSpec,
    generators: usize,
    relations: Matrix, // nrel × generators
    free_rank: usize,
    invariant_factors: Vec<RingElement>, // non-unit, nonzero, in divisibility order
}

impl FpModule {
    pub fn new(spec: RingSpec, generators: usize, relations: Matrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(Error::Shape(format!(
                "presentation has {} columns but the module has {generators} generators",
                relations.cols()
            )));
        }
        if relations.spec() != spec {
            return Err(Error::SpecMismatch(spec.to_string(), relations.spec().to_string()));
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.invariant_factors.len();
        let invariant_factors: Vec<RingElement> =
            snf.invariant_factors.into_iter().filter(|d| !d.is_unit()).collect();
        Ok(FpModule {
            spec,
            generators,
            relations,
            free_rank: generators - rank,
            invariant_factors,
        })
    }

    pub fn zero(spec: RingSpec) -> Self {
        Self::new(spec, 0, Matrix::zero(spec, 0, 0)).unwrap()
    }

    pub fn free(spec: RingSpec, rank: usize) -> Self {
        Self::new(spec, rank, Matrix::zero(spec, 0, rank)).unwrap()
    }

    /// The cyclic module `R/(d)`.
    pub fn cyclic(spec: RingSpec, d: &RingElement) -> Self {
        let rel = Matrix::new(spec, 1, 1, vec![d.clone()]).unwrap();
        Self::new(spec, 1, rel).unwrap()
    }

    /// Direct sum of cyclic pieces and a free part; the presentation is
    /// diagonal and the normal form is recomputed, so the factors need not
    /// arrive in divisibility order.
    pub fn from_pieces(spec: RingSpec, torsion: &[RingElement], free_rank: usize) -> Self {
        let torsion: Vec<&RingElement> =
            torsion.iter().filter(|d| !d.is_unit() && !d.is_zero()).collect();
        let gens = torsion.len() + free_rank;
        let mut rel = Matrix::zero(spec, torsion.len(), gens);
        for (i, d) in torsion.iter().enumerate() {
            rel.set(i, i, (*d).clone());
        }
        Self::new(spec, gens, rel).unwrap()
    }

    pub fn direct_sum(parts: &[&FpModule]) -> Self {
        let spec = parts.first().expect("direct sum of at least one module").spec;
        assert!(parts.iter().all(|m| m.spec == spec), "direct sum across rings");
        let gens = parts.iter().map(|m| m.generators).sum();
        let rels: Vec<&Matrix> = parts.iter().map(|m| &m.relations).collect();
        let rel = Matrix::block_diag(spec, &rels);
        debug_assert_eq!(rel.cols(), gens);
        Self::new(spec, gens, rel).unwrap()
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[RingElement] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// True iff the normal forms agree; normal forms determine the
    /// isomorphism class over the supported rings.
    pub fn is_isomorphic(&self, other: &FpModule) -> bool {
        assert_eq!(self.spec, other.spec, "isomorphism test across rings");
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }

    /// The canonical diagonal presentation of the same isomorphism class:
    /// one generator per invariant factor, then the free generators.
    pub fn normalize(&self) -> FpModule {
        Self::from_pieces(self.spec, &self.invariant_factors, self.free_rank)
    }

    /// Canonical form together with the mutually inverse change-of-basis
    /// homomorphisms `(to, from)`, `to: self → normal`, `from: normal → self`.
    pub fn normalize_maps(&self) -> (FpModule, ModuleHom, ModuleHom) {
        let normal = self.normalize();
        // Column space of relationsᵀ is the relation submodule of R^gens.
        let p = self.relations.transpose();
        let snf = smith_normal_form(&p);
        let rank = snf.invariant_factors.len();
        let torsion_pos: Vec<usize> =
            (0..rank).filter(|&i| !snf.d.get(i, i).is_unit()).collect();
        let free_pos: Vec<usize> = (rank..self.generators).collect();
        let kept: Vec<usize> = torsion_pos.iter().chain(free_pos.iter()).copied().collect();

        let to_matrix = Matrix::from_fn(self.spec, kept.len(), self.generators, |i, j| {
            snf.u.get(kept[i], j).clone()
        });
        let u_inv = snf.u.inverse().expect("SNF transform is unimodular");
        let from_matrix = Matrix::from_fn(self.spec, self.generators, kept.len(), |i, j| {
            u_inv.get(i, kept[j]).clone()
        });
        let to = ModuleHom::new(self.clone(), normal.clone(), to_matrix)
            .expect("normalization projection is a homomorphism");
        let from = ModuleHom::new(normal.clone(), self.clone(), from_matrix)
            .expect("normalization section is a homomorphism");
        (normal, to, from)
    }

    /// Whether a generator-coordinate vector represents zero, i.e. lies in
    /// the relation submodule.
    pub fn element_is_zero(&self, v: &[RingElement]) -> bool {
        assert_eq!(v.len(), self.generators);
        linear_solve(&self.relations.transpose(), v).particular.is_some()
    }

    /// Whether `v` has trivial annihilator in the module (an "infinite order"
    /// element; such elements exist exactly when the free rank is positive).
    pub fn element_has_trivial_annihilator(&self, v: &[RingElement]) -> bool {
        assert_eq!(v.len(), self.generators);
        let vm = Matrix::from_fn(self.spec, self.generators, 1, |i, _| v[i].clone());
        let block = vm.hstack(&self.relations.transpose());
        let kernel = linear_solve(&block, &vec![self.spec.zero(); self.generators]).kernel;
        (0..kernel.cols()).all(|j| kernel.get(0, j).is_zero())
    }

    /// Multiplication by a ring element as an endomorphism.
    pub fn scalar_hom(&self, c: &RingElement) -> ModuleHom {
        let m = Matrix::identity(self.spec, self.generators).scale(c);
        ModuleHom::new_unchecked(self.clone(), self.clone(), m)
    }

    pub fn identity_hom(&self) -> ModuleHom {
        self.scalar_hom(&self.spec.one())
    }

    /// The quotient `self / (c · self)`.
    pub fn quotient_by_scalar(&self, c: &RingElement) -> FpModule {
        let extra = Matrix::identity(self.spec, self.generators).scale(c);
        FpModule::new(self.spec, self.generators, self.relations.vstack(&extra)).unwrap()
    }

    /// The normal-form pieces: torsion factors and the free rank.
    fn pieces(&self) -> (Vec<RingElement>, usize) {
        (self.invariant_factors.clone(), self.free_rank)
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for d in &self.invariant_factors {
            parts.push(format!("R/({d})"));
        }
        if self.free_rank == 1 {
            parts.push("R".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("R^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// The submodule of `ambient` spanned by the given generator columns,
/// presented as a module in its own right.
pub fn submodule_from_generators(ambient: &FpModule, gens: &Matrix) -> FpModule {
    assert_eq!(gens.rows(), ambient.generators(), "generator columns live in the ambient module");
    let spec = ambient.spec();
    let block = gens.hstack(&ambient.relations().transpose());
    let ker = linear_solve(&block, &vec![spec.zero(); ambient.generators()]).kernel;
    let relations =
        Matrix::from_fn(spec, ker.cols(), gens.cols(), |i, j| ker.get(j, i).clone());
    FpModule::new(spec, gens.cols(), relations).unwrap()
}

/// Projective dimension of a finitely presented module over the supported
/// hereditary rings; the zero module gets a distinct bottom element so that
/// `pd ≤ j` stays monotone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ProjDim {
    MinusInfinity,
    Zero,
    One,
}

impl ProjDim {
    pub fn at_most(&self, j: i64) -> bool {
        match self {
            ProjDim::MinusInfinity => true,
            ProjDim::Zero => j >= 0,
            ProjDim::One => j >= 1,
        }
    }
}

pub fn projective_dimension(m: &FpModule) -> ProjDim {
    if m.is_zero() {
        ProjDim::MinusInfinity
    } else if m.invariant_factors().is_empty() {
        ProjDim::Zero
    } else {
        ProjDim::One
    }
}

/// A homomorphism between finitely presented modules, given on the chosen
/// generators; construction checks that source relations land in the relation
/// submodule of the target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleHom {
    source: FpModule,
    target: FpModule,
    matrix: Matrix, // target.generators × source.generators
}

impl ModuleHom {
    /// Constructor for internally produced maps whose compatibility holds by
    /// construction (kernel embeddings, quotient projections, scalar blocks);
    /// skips the per-relation membership solves of `new`.
    pub(crate) fn new_unchecked(source: FpModule, target: FpModule, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), target.generators);
        assert_eq!(matrix.cols(), source.generators);
        ModuleHom { source, target, matrix }
    }

    pub fn new(source: FpModule, target: FpModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::Shape(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let target_rel = target.relations.transpose();
        for r in 0..source.relations.rows() {
            let rel: Vec<RingElement> = (0..source.generators)
                .map(|j| source.relations.get(r, j).clone())
                .collect();
            let image = matrix.mul_vec(&rel);
            if linear_solve(&target_rel, &image).particular.is_none() {
                return Err(Error::NotModuleHom(r));
            }
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, first: &ModuleHom) -> ModuleHom {
        assert_eq!(first.target, self.source, "composition mismatch");
        ModuleHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    pub fn is_zero_hom(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.element_is_zero(&self.matrix.column(j)))
    }

    /// Equality as homomorphisms (entrywise difference maps into relations).
    pub fn equals(&self, other: &ModuleHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.matrix.cols()).all(|j| {
                let diff: Vec<RingElement> = (0..self.matrix.rows())
                    .map(|i| self.matrix.get(i, j).sub(other.matrix.get(i, j)))
                    .collect();
                self.target.element_is_zero(&diff)
            })
    }
}

/// Kernel of a homomorphism, with its embedding into the source.
pub fn kernel(h: &ModuleHom) -> (FpModule, ModuleHom) {
    let spec = h.source.spec();
    let b = h.source.generators();
    let target_rel = h.target.relations().transpose();

    // {x : H x ∈ relation submodule of target}, spanned by the projections of
    // the kernel of the block matrix [H | rel_targetᵀ].
    let block = h.matrix.hstack(&target_rel);
    let big_kernel = linear_solve(&block, &vec![spec.zero(); block.rows()]).kernel;
    let m = big_kernel.cols();
    let reps = Matrix::from_fn(spec, b, m, |i, j| big_kernel.get(i, j).clone());

    // Relations among those representatives modulo the source relations.
    let source_rel = h.source.relations().transpose();
    let block2 = reps.hstack(&source_rel);
    let rel_kernel = linear_solve(&block2, &vec![spec.zero(); b]).kernel;
    let relations = Matrix::from_fn(spec, rel_kernel.cols(), m, |i, j| {
        rel_kernel.get(j, i).clone()
    });

    let k = FpModule::new(spec, m, relations).unwrap();
    let incl = ModuleHom::new_unchecked(k.clone(), h.source.clone(), reps);
    (k, incl)
}

/// Cokernel of a homomorphism, with the projection from the target.
pub fn cokernel(h: &ModuleHom) -> (FpModule, ModuleHom) {
    let spec = h.target.spec();
    let extra = h.matrix.transpose();
    let relations = h.target.relations().vstack(&extra);
    let c = FpModule::new(spec, h.target.generators(), relations).unwrap();
    let proj = ModuleHom::new_unchecked(
        h.target.clone(),
        c.clone(),
        Matrix::identity(spec, h.target.generators()),
    );
    (c, proj)
}

/// Factors `f` through the kernel embedding `incl` (requires that every
/// generator image of `f` lies in the submodule `incl` describes, as is the
/// case when the composite being tested vanishes).
pub fn factor_through(f: &ModuleHom, incl: &ModuleHom) -> ModuleHom {
    assert_eq!(f.target, incl.target, "factorization target mismatch");
    let spec = f.source.spec();
    let m = incl.source.generators();
    let target_rel = incl.target.relations().transpose();
    let block = incl.matrix.hstack(&target_rel);
    let mut cols = Vec::with_capacity(f.source.generators());
    for j in 0..f.source.generators() {
        let image = f.matrix.column(j);
        let sol = linear_solve(&block, &image)
            .particular
            .expect("image lies in the submodule");
        cols.push(sol[..m].to_vec());
    }
    let matrix = Matrix::from_fn(spec, m, f.source.generators(), |i, j| cols[j][i].clone());
    ModuleHom::new_unchecked(f.source.clone(), incl.source.clone(), matrix)
}

/// Homology `ker(g)/im(f)` of a composable pair with `g ∘ f = 0`.
pub fn pair_homology(f: &ModuleHom, g: &ModuleHom) -> FpModule {
    assert_eq!(f.target, g.source, "pair is not composable");
    debug_assert!(g.compose(f).is_zero_hom(), "pair does not compose to zero");
    let (_, incl) = kernel(g);
    let lift = factor_through(f, &incl);
    cokernel(&lift).0
}

/// Checks that `0 → A --f--> B --g--> C → 0` is short exact; the error names
/// the failing position (1 = injectivity, 2 = middle, 3 = surjectivity, 0 =
/// not composable to zero).
pub fn check_short_exact(f: &ModuleHom, g: &ModuleHom) -> Result<()> {
    if f.target != g.source || !g.compose(f).is_zero_hom() {
        return Err(Error::NotExact(0));
    }
    if !kernel(f).0.is_zero() {
        return Err(Error::NotExact(1));
    }
    if !pair_homology(f, g).is_zero() {
        return Err(Error::NotExact(2));
    }
    if !cokernel(g).0.is_zero() {
        return Err(Error::NotExact(3));
    }
    Ok(())
}

/// Verdict of a bijectivity test, carrying a re-checkable witness on failure:
/// a generator-coordinate vector that is a nonzero kernel element of the
/// source, or a target vector not hit by the map.
#[derive(Clone, Debug)]
pub struct BijectivityCertificate {
    pub bijective: bool,
    pub kernel_witness: Option<Vec<RingElement>>,
    pub cokernel_witness: Option<Vec<RingElement>>,
}

impl BijectivityCertificate {
    /// Re-checks the certificate against the homomorphism it was issued for.
    pub fn verify(&self, h: &ModuleHom) -> bool {
        if self.bijective {
            return self.kernel_witness.is_none() && self.cokernel_witness.is_none();
        }
        if let Some(w) = &self.kernel_witness {
            let maps_to_zero = h.target.element_is_zero(&h.matrix.mul_vec(w));
            let nonzero = !h.source.element_is_zero(w);
            if !(maps_to_zero && nonzero) {
                return false;
            }
            return true;
        }
        if let Some(v) = &self.cokernel_witness {
            if v.len() != h.target.generators() {
                return false;
            }
            // zero is always in the span, so an unreachable vector is nonzero
            let reach = h.matrix.hstack(&h.target.relations().transpose());
            return linear_solve(&reach, v).particular.is_none();
        }
        false
    }
}

/// Decides whether `h` is bijective and produces a witness when it is not.
///
/// For endomorphisms (structurally equal source and target) surjectivity
/// already implies bijectivity — a surjective endomorphism of a finitely
/// generated module over a commutative ring is injective by the determinant
/// trick — so only the cokernel is computed on that path.
pub fn hom_map_bijective(h: &ModuleHom) -> BijectivityCertificate {
    if h.source == h.target {
        let (c, _) = cokernel(h);
        if c.is_zero() {
            return BijectivityCertificate {
                bijective: true,
                kernel_witness: None,
                cokernel_witness: None,
            };
        }
        let spec = h.target.spec();
        let reach = h.matrix.hstack(&h.target.relations().transpose());
        let witness = (0..h.target.generators())
            .map(|i| {
                let mut v = vec![spec.zero(); h.target.generators()];
                v[i] = spec.one();
                v
            })
            .find(|v| linear_solve(&reach, v).particular.is_none())
            .expect("nonzero cokernel has an unreachable generator");
        return BijectivityCertificate {
            bijective: false,
            kernel_witness: None,
            cokernel_witness: Some(witness),
        };
    }
    let (k, incl) = kernel(h);
    if !k.is_zero() {
        let witness = (0..incl.matrix().cols())
            .map(|j| incl.matrix().column(j))
            .find(|col| !h.source.element_is_zero(col))
            .expect("nonzero kernel has a nonzero generator");
        return BijectivityCertificate {
            bijective: false,
            kernel_witness: Some(witness),
            cokernel_witness: None,
        };
    }
    let (c, _) = cokernel(h);
    if !c.is_zero() {
        let spec = h.target.spec();
        let reach = h.matrix.hstack(&h.target.relations().transpose());
        let witness = (0..h.target.generators())
            .map(|i| {
                let mut v = vec![spec.zero(); h.target.generators()];
                v[i] = spec.one();
                v
            })
            .find(|v| linear_solve(&reach, v).particular.is_none())
            .expect("nonzero cokernel has an unreachable generator");
        return BijectivityCertificate {
            bijective: false,
            kernel_witness: None,
            cokernel_witness: Some(witness),
        };
    }
    BijectivityCertificate { bijective: true, kernel_witness: None, cokernel_witness: None }
}

fn table_sum(
    spec: RingSpec,
    m: &FpModule,
    n: &FpModule,
    torsion_torsion: impl Fn(&RingElement, &RingElement) -> Option<RingElement>,
    torsion_free: impl Fn(&RingElement) -> Option<RingElement>,
    free_torsion: impl Fn(&RingElement) -> Option<RingElement>,
    free_free_rank: usize,
) -> FpModule {
    let (mt, mf) = m.pieces();
    let (nt, nf) = n.pieces();
    let mut factors = Vec::new();
    let mut free = 0usize;
    for d in &mt {
        for e in &nt {
            if let Some(g) = torsion_torsion(d, e) {
                factors.push(g);
            }
        }
        for _ in 0..nf {
            if let Some(g) = torsion_free(d) {
                factors.push(g);
            }
        }
    }
    for _ in 0..mf {
        for e in &nt {
            if let Some(g) = free_torsion(e) {
                factors.push(g);
            }
        }
        free += nf * free_free_rank;
    }
    FpModule::from_pieces(spec, &factors, free)
}

/// `Hom_R(M, N)` from the cyclic-summand tables:
/// `Hom(R/(d), R/(e)) = R/gcd(d,e)`, `Hom(R/(d), R) = 0`, `Hom(R, X) = X`.
pub fn hom_module(m: &FpModule, n: &FpModule) -> FpModule {
    assert_eq!(m.spec(), n.spec(), "Hom across rings");
    table_sum(
        m.spec(),
        m,
        n,
        |d, e| Some(d.gcd(e)),
        |_| None,
        |e| Some(e.clone()),
        1,
    )
}

/// `Ext¹_R(M, N)` from the tables:
/// `Ext¹(R/(d), R/(e)) = R/gcd(d,e)`, `Ext¹(R/(d), R) = R/(d)`, `Ext¹(R, X) = 0`.
pub fn ext1(m: &FpModule, n: &FpModule) -> FpModule {
    assert_eq!(m.spec(), n.spec(), "Ext across rings");
    table_sum(
        m.spec(),
        m,
        n,
        |d, e| Some(d.gcd(e)),
        |d| Some(d.clone()),
        |_| None,
        0,
    )
}

/// `Tor₁_R(M, N)` from the tables:
/// `Tor₁(R/(d), R/(e)) = R/gcd(d,e)`, zero when either side is free.
pub fn tor1(m: &FpModule, n: &FpModule) -> FpModule {
    assert_eq!(m.spec(), n.spec(), "Tor across rings");
    table_sum(
        m.spec(),
        m,
        n,
        |d, e| Some(d.gcd(e)),
        |_| None,
        |_| None,
        0,
    )
}

/// The direct sum of `k` copies of `n`.
pub fn power_module(n: &FpModule, k: usize) -> FpModule {
    if k == 0 {
        return FpModule::zero(n.spec());
    }
    let parts: Vec<&FpModule> = std::iter::repeat_n(n, k).collect();
    FpModule::direct_sum(&parts)
}

/// The map `N^cols → N^rows` induced by a ring-coefficient matrix acting
/// block-wise (Kronecker with the identity on `N`'s generators).
pub fn power_hom(coeffs: &Matrix, n: &FpModule) -> ModuleHom {
    let source = power_module(n, coeffs.cols());
    let target = power_module(n, coeffs.rows());
    let id = Matrix::identity(n.spec(), n.generators());
    let matrix = coeffs.kronecker(&id);
    ModuleHom::new_unchecked(source, target, matrix)
}

/// Componentwise power `φ^k : N^k → N'^k` of a homomorphism.
pub fn power_of_hom(phi: &ModuleHom, k: usize) -> ModuleHom {
    let source = power_module(phi.source(), k);
    let target = power_module(phi.target(), k);
    let blocks: Vec<&Matrix> = std::iter::repeat_n(phi.matrix(), k).collect();
    let matrix = Matrix::block_diag(phi.source().spec(), &blocks);
    ModuleHom::new_unchecked(source, target, matrix)
}

/// `Hom_R(M, N)` computed from the presentation of `M` as the kernel of
/// `N^b → N^a`; returns the module together with its embedding into `N^b`,
/// which is what makes the construction functorial in `N`.
pub fn hom_via_presentation(m: &FpModule, n: &FpModule) -> (FpModule, ModuleHom) {
    assert_eq!(m.spec(), n.spec(), "Hom across rings");
    let alpha = power_hom(m.relations(), n);
    kernel(&alpha)
}

/// The map `Hom(M, N) → Hom(M, N')` induced by `φ: N → N'`, relative to the
/// kernel presentations returned by [`hom_via_presentation`].
pub fn hom_induced(
    m: &FpModule,
    phi: &ModuleHom,
    hom_n: &(FpModule, ModuleHom),
    hom_n2: &(FpModule, ModuleHom),
) -> ModuleHom {
    let lifted = power_of_hom(phi, m.generators());
    let into_power = lifted.compose(&hom_n.1);
    factor_through(&into_power, &hom_n2.1)
}

/// `Ext¹_R(M, N)` from the presentation: the cokernel of `N^b → N^a`.
pub fn ext1_via_presentation(m: &FpModule, n: &FpModule) -> FpModule {
    assert_eq!(m.spec(), n.spec(), "Ext across rings");
    let alpha = power_hom(m.relations(), n);
    cokernel(&alpha).0
}

/// `Tor₁_R(M, N)` from the presentation: the kernel of `N^a → N^b` under the
/// transposed relation action.
pub fn tor1_via_presentation(m: &FpModule, n: &FpModule) -> FpModule {
    assert_eq!(m.spec(), n.spec(), "Tor across rings");
    let beta = power_hom(&m.relations().transpose(), n);
    kernel(&beta).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    fn zmod(n: i64) -> FpModule {
        FpModule::cyclic(z(), &z().from_i64(n))
    }

    #[test]
    fn normal_forms() {
        // diag(2,1): the unit kills a generator, leaving Z/2
        let m = FpModule::new(z(), 2, Matrix::from_i64(z(), &[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(m.free_rank(), 0);
        assert_eq!(m.invariant_factors(), &[z().from_i64(2)]);

        // no relations on two generators: Z^2
        let f = FpModule::free(z(), 2);
        assert_eq!(f.free_rank(), 2);
        assert!(f.invariant_factors().is_empty());

        // [[4,2],[2,4]]: gcd 2, |det| 12, so Z/2 ⊕ Z/6
        let m = FpModule::new(z(), 2, Matrix::from_i64(z(), &[&[4, 2], &[2, 4]])).unwrap();
        assert_eq!(m.invariant_factors(), &[z().from_i64(2), z().from_i64(6)]);
    }

    #[test]
    fn isomorphism_tests() {
        let a = FpModule::from_pieces(z(), &[z().from_i64(2), z().from_i64(3)], 0);
        assert!(a.is_isomorphic(&zmod(6)));
        assert!(!FpModule::free(z(), 1).is_isomorphic(&zmod(2)));
        let coker_id = FpModule::new(z(), 1, Matrix::from_i64(z(), &[&[1]])).unwrap();
        assert!(FpModule::zero(z()).is_isomorphic(&coker_id));
    }

    #[test]
    fn hom_ext_tor_tables() {
        let m = hom_module(&zmod(2), &zmod(4));
        assert!(m.is_isomorphic(&zmod(2)));
        let n = FpModule::from_pieces(z(), &[z().from_i64(6)], 1);
        assert!(hom_module(&FpModule::free(z(), 1), &n).is_isomorphic(&n));
        assert!(hom_module(&zmod(2), &FpModule::free(z(), 1)).is_zero());

        assert!(ext1(&zmod(2), &FpModule::free(z(), 1)).is_isomorphic(&zmod(2)));
        assert!(ext1(&FpModule::free(z(), 3), &n).is_zero());
        assert!(ext1(&zmod(2), &zmod(4)).is_isomorphic(&zmod(2)));

        assert!(tor1(&zmod(2), &zmod(4)).is_isomorphic(&zmod(2)));
        assert!(tor1(&FpModule::free(z(), 1), &n).is_zero());
        assert!(tor1(&zmod(2), &zmod(3)).is_zero());
    }

    #[test]
    fn tables_match_presentation_route() {
        let samples = [
            zmod(4),
            zmod(6),
            FpModule::from_pieces(z(), &[z().from_i64(2), z().from_i64(8)], 1),
            FpModule::free(z(), 2),
            FpModule::zero(z()),
        ];
        for m in &samples {
            for n in &samples {
                assert!(
                    hom_module(m, n).is_isomorphic(&hom_via_presentation(m, n).0),
                    "Hom mismatch"
                );
                assert!(ext1(m, n).is_isomorphic(&ext1_via_presentation(m, n)), "Ext mismatch");
                assert!(tor1(m, n).is_isomorphic(&tor1_via_presentation(m, n)), "Tor mismatch");
            }
        }
    }

    #[test]
    fn projective_dimensions() {
        assert_eq!(projective_dimension(&FpModule::free(z(), 3)), ProjDim::Zero);
        assert_eq!(projective_dimension(&zmod(4)), ProjDim::One);
        assert_eq!(projective_dimension(&FpModule::zero(z())), ProjDim::MinusInfinity);
        assert!(ProjDim::MinusInfinity.at_most(-5));
        assert!(!ProjDim::One.at_most(0));
    }

    #[test]
    fn bijectivity_certificates() {
        // ×2 on Z/3 is bijective (2·2 = 4 ≡ 1 mod 3)
        let cert = hom_map_bijective(&zmod(3).scalar_hom(&z().from_i64(2)));
        assert!(cert.bijective);

        // ×2 on Z misses the odds
        let zz = FpModule::free(z(), 1);
        let h = zz.scalar_hom(&z().from_i64(2));
        let cert = hom_map_bijective(&h);
        assert!(!cert.bijective);
        assert!(cert.cokernel_witness.is_some());
        assert!(cert.verify(&h));

        let idh = zmod(8).identity_hom();
        assert!(hom_map_bijective(&idh).bijective);
    }

    #[test]
    fn kernel_cokernel_shapes() {
        // ×2: Z/4 → Z/4 has kernel Z/2 and cokernel Z/2
        let h = zmod(4).scalar_hom(&z().from_i64(2));
        let (k, incl) = kernel(&h);
        assert!(k.is_isomorphic(&zmod(2)));
        assert!(h.compose(&incl).is_zero_hom());
        let (c, _) = cokernel(&h);
        assert!(c.is_isomorphic(&zmod(2)));
    }

    #[test]
    fn exactness_check() {
        // 0 → Z/2 → Z/4 → Z/2 → 0 with f = ×2 into Z/4
        let f = ModuleHom::new(zmod(2), zmod(4), Matrix::from_i64(z(), &[&[2]])).unwrap();
        let g = ModuleHom::new(zmod(4), zmod(2), Matrix::from_i64(z(), &[&[1]])).unwrap();
        assert!(check_short_exact(&f, &g).is_ok());

        // the non-exact variant: Z/2 → Z/4 by zero
        let f0 = ModuleHom::new(zmod(2), zmod(4), Matrix::from_i64(z(), &[&[0]])).unwrap();
        assert!(matches!(check_short_exact(&f0, &g), Err(Error::NotExact(1))));
    }

    #[test]
    fn normalization_maps_are_mutually_inverse() {
        let m = FpModule::new(z(), 3, Matrix::from_i64(z(), &[&[2, 4, 6], &[0, 6, 6]])).unwrap();
        let (normal, to, from) = m.normalize_maps();
        assert!(m.is_isomorphic(&normal));
        assert!(to.compose(&from).equals(&normal.identity_hom()));
        assert!(from.compose(&to).equals(&m.identity_hom()));
    }

    #[test]
    fn bilinearity_spot_checks() {
        let a = zmod(4);
        let b = FpModule::from_pieces(z(), &[z().from_i64(3)], 1);
        let n = FpModule::from_pieces(z(), &[z().from_i64(6)], 1);
        let sum = FpModule::direct_sum(&[&a, &b]);
        for f in [hom_module, ext1, tor1] {
            let left = f(&sum, &n);
            let right = FpModule::direct_sum(&[&f(&a, &n), &f(&b, &n)]);
            assert!(left.is_isomorphic(&right));
        }
    }

    #[test]
    fn tor_symmetry_samples() {
        let mods = [zmod(4), zmod(6), FpModule::from_pieces(z(), &[z().from_i64(2)], 1)];
        for m in &mods {
            for n in &mods {
                assert!(tor1(m, n).is_isomorphic(&tor1(n, m)));
            }
        }
    }
}
