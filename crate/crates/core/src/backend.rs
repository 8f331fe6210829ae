//! The two algebra backends and their coideal letter tables.
//!
//! Each backend names a small alphabet of letters: the generators of the right
//! coideal subalgebra, those of the left one, and the Casimir, which belongs
//! to both. Coproducts and coactions of letters are tabulated with the
//! retained legs kept as letter words, so that a leg sitting at the edge of a
//! tensor can keep receiving coactions.

use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::elem::{AlgElem, Monomial};
use crate::osp::{self, OspMono};
use crate::qcoeff::{q_plus_qinv, v_minus_vinv, v_plus_vinv, LaurentPoly, Scalar};
use crate::uq::{self, UqMono};

pub type Letter = u8;
pub type Word = SmallVec<[Letter; 4]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
    Both,
}

impl Side {
    pub fn in_right(self) -> bool {
        matches!(self, Side::Right | Side::Both)
    }
    pub fn in_left(self) -> bool {
        matches!(self, Side::Left | Side::Both)
    }
}

#[derive(Debug, Clone)]
pub struct LetterInfo<M: Monomial> {
    pub name: &'static str,
    pub side: Side,
    pub pbw: AlgElem<M>,
}

/// One leg of a tabulated two-leg image.
#[derive(Debug, Clone)]
pub enum LegVal<M: Monomial> {
    Word(Word),
    Pbw(AlgElem<M>),
}

#[derive(Debug, Clone)]
pub struct TwoLeg<M: Monomial> {
    pub left: LegVal<M>,
    pub right: LegVal<M>,
    pub coeff: Scalar,
}

/// A single tensor leg of an element under construction: either a PBW
/// monomial or a letter word kept symbolic for later coactions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg<M> {
    Pbw(M),
    Word(Word),
}

/// Flattened two-leg image of a letter.
pub type Image<M> = Vec<(Leg<M>, Leg<M>, Scalar)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Map {
    Delta,
    TauR,
    TauL,
}

#[derive(Debug)]
pub struct Tables<M: Monomial> {
    pub letters: Vec<LetterInfo<M>>,
    pub delta: Vec<Vec<TwoLeg<M>>>,
    pub tau_r: Vec<Vec<TwoLeg<M>>>,
    pub tau_l: Vec<Vec<TwoLeg<M>>>,
    pub casimir: Letter,
    images: [Vec<Image<M>>; 3],
}

impl<M: Monomial> Tables<M> {
    fn new(
        letters: Vec<LetterInfo<M>>,
        delta: Vec<Vec<TwoLeg<M>>>,
        tau_r: Vec<Vec<TwoLeg<M>>>,
        tau_l: Vec<Vec<TwoLeg<M>>>,
        casimir: Letter,
    ) -> Self {
        let images = [flatten_all(&delta), flatten_all(&tau_r), flatten_all(&tau_l)];
        Tables { letters, delta, tau_r, tau_l, casimir, images }
    }

    /// Flattened image of a single letter under `map`; empty when the map is
    /// undefined on that letter.
    pub fn image(&self, map: Map, l: Letter) -> &Image<M> {
        let i = match map {
            Map::Delta => 0,
            Map::TauR => 1,
            Map::TauL => 2,
        };
        &self.images[i][l as usize]
    }
}

fn flatten_leg<M: Monomial>(l: &LegVal<M>) -> Vec<(Leg<M>, Scalar)> {
    match l {
        LegVal::Word(w) => vec![(Leg::Word(w.clone()), Scalar::one())],
        LegVal::Pbw(x) => x.sorted_terms().into_iter().map(|(k, c)| (Leg::Pbw(k[0]), c.clone())).collect(),
    }
}

fn flatten_all<M: Monomial>(table: &[Vec<TwoLeg<M>>]) -> Vec<Image<M>> {
    table
        .iter()
        .map(|img| {
            let mut out = Vec::new();
            for t in img {
                for (l, cl) in flatten_leg(&t.left) {
                    for (r, cr) in flatten_leg(&t.right) {
                        out.push((l.clone(), r, &(&t.coeff * &cl) * &cr));
                    }
                }
            }
            out
        })
        .collect()
}

/// Coefficients of the standard relation
/// `xy*XY + yx*YX = symdiff*G_{AΔB} + pair*(G_{A∩B} G_{A∪B} + G_{A\B} G_{B\A})`.
#[derive(Debug, Clone)]
pub struct StarCoeffs {
    pub xy: Scalar,
    pub yx: Scalar,
    pub symdiff: Scalar,
    pub pair: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Aw,
    Bi,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Aw => "aw",
            BackendKind::Bi => "bi",
        })
    }
}

impl std::str::FromStr for BackendKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aw" => Ok(BackendKind::Aw),
            "bi" => Ok(BackendKind::Bi),
            other => Err(format!("unknown backend {other:?} (expected aw or bi)")),
        }
    }
}

/// Named residuals of the defining relations.
pub type Residuals<M> = Vec<(&'static str, AlgElem<M>)>;

pub trait Backend: Copy + Default + fmt::Debug + Send + Sync + 'static {
    type Mono: Monomial;
    const KIND: BackendKind;

    fn tables() -> &'static Tables<Self::Mono>;

    /// Scalar standing in for the generator of the empty set.
    fn empty_scalar() -> Scalar;

    fn star() -> &'static StarCoeffs;

    /// Algebra generators with display names.
    fn generators() -> Vec<(&'static str, AlgElem<Self::Mono>)>;

    /// Residuals `lhs - rhs` of the defining relations, evaluated on images
    /// of [`Backend::generators`] (in the same order).
    fn relation_residuals(g: &[AlgElem<Self::Mono>]) -> crate::Result<Residuals<Self::Mono>>;

    fn casimir() -> AlgElem<Self::Mono> {
        let t = Self::tables();
        t.letters[t.casimir as usize].pbw.clone()
    }

    /// Left-hand side bracket of the standard relation.
    fn bracket(x: &AlgElem<Self::Mono>, y: &AlgElem<Self::Mono>) -> crate::Result<AlgElem<Self::Mono>> {
        let s = Self::star();
        AlgElem::lin_comm(x, y, &s.xy, &s.yx)
    }
}

/// Askey-Wilson backend over `U_q(sl2)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Aw;

/// q-Bannai-Ito backend over `osp_q(1|2)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bi;

enum Spec<M: 'static> {
    W(&'static [Letter]),
    P(&'static [M]),
}

fn leg<M: Monomial>(s: Spec<M>) -> LegVal<M> {
    match s {
        Spec::W(w) => LegVal::Word(w.iter().copied().collect()),
        Spec::P(ms) => LegVal::Pbw(product(ms)),
    }
}

fn two<M: Monomial>(l: Spec<M>, r: Spec<M>, coeff: Scalar) -> TwoLeg<M> {
    TwoLeg { left: leg(l), right: leg(r), coeff }
}

fn product<M: Monomial>(ms: &[M]) -> AlgElem<M> {
    let mut acc = AlgElem::one(1);
    for m in ms {
        acc = acc.mul(&AlgElem::mono(*m)).expect("arity 1");
    }
    acc
}

pub mod aw {
    use super::Letter;
    pub const LAMBDA: Letter = 0;
    pub const EKINV: Letter = 1;
    pub const F: Letter = 2;
    pub const KINV: Letter = 3;
    pub const E: Letter = 4;
    pub const FK: Letter = 5;
    pub const K: Letter = 6;
}

pub mod bi {
    use super::Letter;
    pub const GAMMA: Letter = 0;
    pub const APK: Letter = 1;
    pub const AMK: Letter = 2;
    pub const K2P: Letter = 3;
    pub const APKP: Letter = 4;
    pub const AMKP: Letter = 5;
    pub const KM2P: Letter = 6;
}

fn aw_tables() -> Tables<UqMono> {
    use aw::*;
    use Spec::{P, W};
    const EE: UqMono = UqMono::E;
    const FF: UqMono = UqMono::F;
    const KK: UqMono = UqMono::K;
    const KI: UqMono = UqMono::KINV;
    let one = Scalar::one;
    let d2 = &uq::d() * &uq::d();
    let qq = q_plus_qinv();
    let q = Scalar::q_pow;

    let letters = vec![
        LetterInfo { name: "Λ", side: Side::Both, pbw: uq::casimir() },
        LetterInfo { name: "EK^-1", side: Side::Right, pbw: product(&[EE, KI]) },
        LetterInfo { name: "F", side: Side::Right, pbw: product(&[FF]) },
        LetterInfo { name: "K^-1", side: Side::Right, pbw: product(&[KI]) },
        LetterInfo { name: "E", side: Side::Left, pbw: product(&[EE]) },
        LetterInfo { name: "FK", side: Side::Left, pbw: product(&[FF, KK]) },
        LetterInfo { name: "K", side: Side::Left, pbw: product(&[KK]) },
    ];

    let mut delta: Vec<Vec<TwoLeg<UqMono>>> = vec![Vec::new(); 7];
    delta[LAMBDA as usize] = vec![
        two(W(&[LAMBDA]), W(&[KINV]), one()),
        two(W(&[K]), W(&[LAMBDA]), one()),
        two(W(&[K]), W(&[KINV]), -qq.clone()),
        two(W(&[E]), W(&[F]), d2.clone()),
        two(W(&[FK]), W(&[EKINV]), &d2 * &q(-2)),
    ];
    delta[EKINV as usize] = vec![two(P(&[EE, KI]), W(&[KINV]), one()), two(P(&[]), W(&[EKINV]), one())];
    delta[F as usize] = vec![two(P(&[FF]), W(&[KINV]), one()), two(P(&[]), W(&[F]), one())];
    delta[KINV as usize] = vec![two(P(&[KI]), W(&[KINV]), one())];
    delta[E as usize] = vec![two(W(&[E]), P(&[]), one()), two(W(&[K]), P(&[EE]), one())];
    delta[FK as usize] = vec![two(W(&[FK]), P(&[]), one()), two(W(&[K]), P(&[FF, KK]), one())];
    delta[K as usize] = vec![two(W(&[K]), P(&[KK]), one())];

    let mut tau_r: Vec<Vec<TwoLeg<UqMono>>> = vec![Vec::new(); 7];
    tau_r[LAMBDA as usize] = vec![two(P(&[]), W(&[LAMBDA]), one())];
    tau_r[EKINV as usize] = vec![two(P(&[KI]), W(&[EKINV]), one())];
    tau_r[F as usize] = vec![
        two(P(&[KK]), W(&[F]), one()),
        two(P(&[FF, FF, KK]), W(&[EKINV]), -(&q(-3) * &d2)),
        two(P(&[FF, KK]), W(&[KINV]), &q(-1) * &qq),
        two(P(&[FF, KK]), W(&[LAMBDA]), -q(-1)),
    ];
    tau_r[KINV as usize] =
        vec![two(P(&[]), W(&[KINV]), one()), two(P(&[FF]), W(&[EKINV]), -(&q(-1) * &d2))];

    let mut tau_l: Vec<Vec<TwoLeg<UqMono>>> = vec![Vec::new(); 7];
    tau_l[LAMBDA as usize] = vec![two(W(&[LAMBDA]), P(&[]), one())];
    tau_l[E as usize] = vec![two(W(&[E]), P(&[KK]), one())];
    tau_l[FK as usize] = vec![
        two(W(&[FK]), P(&[KI]), one()),
        two(W(&[E]), P(&[FF, FF, KK]), -(&q(-1) * &d2)),
        two(W(&[K]), P(&[FF]), &q(1) * &qq),
        two(W(&[LAMBDA]), P(&[FF]), -q(1)),
    ];
    tau_l[K as usize] = vec![two(W(&[K]), P(&[]), one()), two(W(&[E]), P(&[FF, KK]), -(&q(-1) * &d2))];

    Tables::new(letters, delta, tau_r, tau_l, LAMBDA)
}

fn bi_tables() -> Tables<OspMono> {
    use bi::*;
    use Spec::{P, W};
    const AM: OspMono = OspMono::AM;
    const AP: OspMono = OspMono::AP;
    const KK: OspMono = OspMono::K;
    const KI: OspMono = OspMono::KINV;
    const PP: OspMono = OspMono::P;
    let one = Scalar::one;
    let d = Scalar::d();
    let v = Scalar::v_pow;
    let vm = v_minus_vinv();

    let letters = vec![
        LetterInfo { name: "Γ", side: Side::Both, pbw: osp::gamma_casimir() },
        LetterInfo { name: "A+K", side: Side::Right, pbw: product(&[AP, KK]) },
        LetterInfo { name: "A-K", side: Side::Right, pbw: product(&[AM, KK]) },
        LetterInfo { name: "K^2P", side: Side::Right, pbw: product(&[KK, KK, PP]) },
        LetterInfo { name: "A+K^-1P", side: Side::Left, pbw: product(&[AP, KI, PP]) },
        LetterInfo { name: "A-K^-1P", side: Side::Left, pbw: product(&[AM, KI, PP]) },
        LetterInfo { name: "K^-2P", side: Side::Left, pbw: product(&[KI, KI, PP]) },
    ];

    let mut delta: Vec<Vec<TwoLeg<OspMono>>> = vec![Vec::new(); 7];
    delta[GAMMA as usize] = vec![
        two(W(&[GAMMA]), W(&[K2P]), one()),
        two(W(&[KM2P]), W(&[GAMMA]), one()),
        // 1/(q^(1/2) + q^(-1/2)) = (q^(1/2) - q^(-1/2))/(q - q^-1)
        two(W(&[KM2P]), W(&[K2P]), Scalar::over_d(vm.numerator().clone(), 1)),
        two(W(&[APKP]), W(&[AMK]), v(-1)),
        two(W(&[AMKP]), W(&[APK]), -v(1)),
    ];
    delta[APK as usize] = vec![two(P(&[AP, KK]), W(&[K2P]), one()), two(P(&[]), W(&[APK]), one())];
    delta[AMK as usize] = vec![two(P(&[AM, KK]), W(&[K2P]), one()), two(P(&[]), W(&[AMK]), one())];
    delta[K2P as usize] = vec![two(P(&[KK, KK, PP]), W(&[K2P]), one())];
    delta[APKP as usize] =
        vec![two(W(&[APKP]), P(&[]), one()), two(W(&[KM2P]), P(&[AP, KI, PP]), one())];
    delta[AMKP as usize] =
        vec![two(W(&[AMKP]), P(&[]), one()), two(W(&[KM2P]), P(&[AM, KI, PP]), one())];
    delta[KM2P as usize] = vec![two(W(&[KM2P]), P(&[KI, KI, PP]), one())];

    let mut tau_r: Vec<Vec<TwoLeg<OspMono>>> = vec![Vec::new(); 7];
    tau_r[GAMMA as usize] = vec![two(P(&[]), W(&[GAMMA]), one())];
    tau_r[AMK as usize] = vec![two(P(&[KK, KK, PP]), W(&[AMK]), one())];
    tau_r[APK as usize] = vec![
        two(P(&[KI, KI, PP]), W(&[APK]), one()),
        two(P(&[AP, AP, PP]), W(&[AMK]), &v(-1) * &d),
        two(P(&[AP, KI, PP]), W(&[K2P]), &v(-1) * &vm),
        two(P(&[AP, KI, PP]), W(&[GAMMA]), &v(-1) * &d),
    ];
    tau_r[K2P as usize] = vec![two(P(&[]), W(&[K2P]), one()), two(P(&[AP, KK]), W(&[AMK]), -d.clone())];

    let mut tau_l: Vec<Vec<TwoLeg<OspMono>>> = vec![Vec::new(); 7];
    tau_l[GAMMA as usize] = vec![two(W(&[GAMMA]), P(&[]), one())];
    tau_l[AMKP as usize] = vec![two(W(&[AMKP]), P(&[KI, KI, PP]), one())];
    tau_l[APKP as usize] = vec![
        two(W(&[APKP]), P(&[KK, KK, PP]), one()),
        two(W(&[AMKP]), P(&[AP, AP, PP]), -(&v(1) * &d)),
        two(W(&[KM2P]), P(&[AP, KK]), -(&v(1) * &vm)),
        two(W(&[GAMMA]), P(&[AP, KK]), -(&v(1) * &d)),
    ];
    tau_l[KM2P as usize] =
        vec![two(W(&[KM2P]), P(&[]), one()), two(W(&[AMKP]), P(&[AP, KI, PP]), -d.clone())];

    Tables::new(letters, delta, tau_r, tau_l, GAMMA)
}

impl Backend for Aw {
    type Mono = UqMono;
    const KIND: BackendKind = BackendKind::Aw;

    fn tables() -> &'static Tables<UqMono> {
        static T: OnceLock<Tables<UqMono>> = OnceLock::new();
        T.get_or_init(aw_tables)
    }

    fn empty_scalar() -> Scalar {
        q_plus_qinv()
    }

    fn star() -> &'static StarCoeffs {
        static S: OnceLock<StarCoeffs> = OnceLock::new();
        S.get_or_init(|| StarCoeffs {
            xy: Scalar::q_pow(1),
            yx: -Scalar::q_pow(-1),
            symdiff: Scalar::from_poly(LaurentPoly::from_terms([(-4, 1i64), (4, -1)])),
            pair: Scalar::d(),
        })
    }

    fn generators() -> Vec<(&'static str, AlgElem<UqMono>)> {
        [("E", UqMono::E), ("F", UqMono::F), ("K", UqMono::K), ("K^-1", UqMono::KINV)]
            .into_iter()
            .map(|(n, m)| (n, uq::gen(m)))
            .collect()
    }

    fn relation_residuals(g: &[AlgElem<UqMono>]) -> crate::Result<Residuals<UqMono>> {
        let [e, f, k, ki] = g else {
            return Err(crate::Error::Malformed("expected images of E, F, K, K^-1".into()));
        };
        let one = AlgElem::one(e.arity());
        let dinv = Scalar::over_d(LaurentPoly::one(), 1);
        Ok(vec![
            ("KE = q^2 EK", k.mul(e)?.try_sub(&e.mul(k)?.scale(&Scalar::q_pow(2)))?),
            ("KF = q^-2 FK", k.mul(f)?.try_sub(&f.mul(k)?.scale(&Scalar::q_pow(-2)))?),
            ("KK^-1 = 1", k.mul(ki)?.try_sub(&one)?),
            ("K^-1K = 1", ki.mul(k)?.try_sub(&one)?),
            ("[E,F] = (K-K^-1)/(q-q^-1)", AlgElem::comm(e, f)?.try_sub(&k.try_sub(ki)?.scale(&dinv))?),
        ])
    }
}

impl Backend for Bi {
    type Mono = OspMono;
    const KIND: BackendKind = BackendKind::Bi;

    fn tables() -> &'static Tables<OspMono> {
        static T: OnceLock<Tables<OspMono>> = OnceLock::new();
        T.get_or_init(bi_tables)
    }

    /// `-1/(q^(1/2) + q^(-1/2))`, fixed by the disjoint two-leg instance of the
    /// standard relation; see `extension::derive_empty_scalar`.
    fn empty_scalar() -> Scalar {
        -Scalar::over_d(v_minus_vinv().numerator().clone(), 1)
    }

    fn star() -> &'static StarCoeffs {
        static S: OnceLock<StarCoeffs> = OnceLock::new();
        S.get_or_init(|| StarCoeffs {
            xy: Scalar::v_pow(1),
            yx: Scalar::v_pow(-1),
            symdiff: Scalar::one(),
            pair: v_plus_vinv(),
        })
    }

    fn generators() -> Vec<(&'static str, AlgElem<OspMono>)> {
        [("A-", OspMono::AM), ("A+", OspMono::AP), ("K", OspMono::K), ("K^-1", OspMono::KINV), ("P", OspMono::P)]
            .into_iter()
            .map(|(n, m)| (n, osp::gen(m)))
            .collect()
    }

    fn relation_residuals(g: &[AlgElem<OspMono>]) -> crate::Result<Residuals<OspMono>> {
        let [am, ap, k, ki, p] = g else {
            return Err(crate::Error::Malformed("expected images of A-, A+, K, K^-1, P".into()));
        };
        let one = AlgElem::one(am.arity());
        let anti = |x: &AlgElem<OspMono>, y: &AlgElem<OspMono>| x.mul(y)?.try_add(&y.mul(x)?);
        let k2 = k.mul(k)?.try_sub(&ki.mul(ki)?)?.scale(&osp::inv_v_minus());
        Ok(vec![
            ("KA+ = q^(1/2) A+K", k.mul(ap)?.try_sub(&ap.mul(k)?.scale(&Scalar::v_pow(1)))?),
            ("KA- = q^(-1/2) A-K", k.mul(am)?.try_sub(&am.mul(k)?.scale(&Scalar::v_pow(-1)))?),
            ("KK^-1 = 1", k.mul(ki)?.try_sub(&one)?),
            ("K^-1K = 1", ki.mul(k)?.try_sub(&one)?),
            ("P^2 = 1", p.mul(p)?.try_sub(&one)?),
            ("PA+ = -A+P", anti(p, ap)?),
            ("PA- = -A-P", anti(p, am)?),
            ("PK = KP", AlgElem::comm(p, k)?),
            ("{A+,A-} = (K^2-K^-2)/(q^(1/2)-q^(-1/2))", anti(ap, am)?.try_sub(&k2)?),
        ])
    }
}

/// Normal form of a letter word.
pub fn expand_word<B: Backend>(w: &[Letter]) -> AlgElem<B::Mono> {
    let letters = &B::tables().letters;
    match w {
        [] => AlgElem::one(1),
        [l] => letters[*l as usize].pbw.clone(),
        _ => {
            let mut acc = letters[w[0] as usize].pbw.clone();
            for l in &w[1..] {
                acc = acc.mul(&letters[*l as usize].pbw).expect("arity 1");
            }
            acc
        }
    }
}

pub fn is_right_word<B: Backend>(w: &[Letter]) -> bool {
    let letters = &B::tables().letters;
    w.iter().all(|l| letters[*l as usize].side.in_right())
}

pub fn is_left_word<B: Backend>(w: &[Letter]) -> bool {
    let letters = &B::tables().letters;
    w.iter().all(|l| letters[*l as usize].side.in_left())
}

pub fn word_name<B: Backend>(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let letters = &B::tables().letters;
    w.iter().map(|l| letters[*l as usize].name).collect::<Vec<_>>().join("·")
}

impl<M: Monomial> LegVal<M> {
    pub fn expand<B: Backend<Mono = M>>(&self) -> AlgElem<M> {
        match self {
            LegVal::Word(w) => expand_word::<B>(w),
            LegVal::Pbw(x) => x.clone(),
        }
    }
}

/// Normal form of a tabulated two-leg image.
pub fn expand_two_legs<B: Backend>(terms: &[TwoLeg<B::Mono>]) -> AlgElem<B::Mono> {
    let mut out = AlgElem::zero(2);
    for t in terms {
        let x = t.left.expand::<B>().tensor(&t.right.expand::<B>()).scale(&t.coeff);
        out = &out + &x;
    }
    out
}
