mod higher;
mod hyperplane;
mod quermass;
mod zonoid;

use super::{BodyClass, Check, CheckSpec, Context, Evaluation};
use crate::error::{GeomError, Result};

type Eval = fn(&Context) -> Result<Evaluation>;

struct Registered {
    spec: CheckSpec,
    eval: Eval,
}

impl Check for Registered {
    fn spec(&self) -> CheckSpec {
        self.spec.clone()
    }

    fn evaluate(&self, ctx: &Context) -> Result<Evaluation> {
        (self.eval)(ctx)
    }
}

fn reg(id: &'static str, class: BodyClass, parameters: &'static str, claim: &'static str, eval: Eval) -> Box<dyn Check> {
    Box::new(Registered { spec: CheckSpec { id, claim, class, parameters }, eval })
}

/// The full catalog in report order.
pub fn checks() -> Vec<Box<dyn Check>> {
    use BodyClass::*;
    vec![
        reg("GHP", Any, "xi",
            "S(P K)/|P K| <= (2(n-1)/n) S(K)/|K| for hyperplane shadows P K", hyperplane::ghp),
        reg("T-HYPER-1", Any, "",
            "|K|^(1/n) min S(P K) <= (2 b_n partial_K / (n omega_n^(1/n))) S(K)", hyperplane::hyper1),
        reg("T-LOWER-MIN", Positioned, "position=min-surface",
            "in minimal surface position |K|^(1/n) min S(P K) >= ((n-1) omega_n^(1/(n-1)) / (4 n^((n-2)/(n-1)) partial_K^(1/(n-1)))) S(K)",
            hyperplane::lower_min),
        reg("T-HYPER-2", Zonoid, "",
            "zonoids: |Z|^(1/n) min S(P Z) <= 2 b_n S(Z)", hyperplane::hyper2),
        reg("T-HYPER-3", Any, "",
            "|K| mean S(P K) <= (2(n-1) omega_(n-1) / (n^2 omega_n)) S(K)^2", hyperplane::hyper3),
        reg("T-HYPER-4", Positioned, "position",
            "classical positions: |K|^(1/n) mean S(P K) <= (2(n-1) omega_(n-1) / (n^2 omega_n)) partial(K) S(K), c2 reported",
            hyperplane::hyper4),
        reg("T-HYPER-5", Any, "",
            "mean S(P K) >= ((n-1) omega_(n-1) / (n omega_n)^((n-2)/(n-1))) S(K)^((n-2)/(n-1))", hyperplane::hyper5),
        reg("T-HYPER-6", Positioned, "position",
            "mean width, isotropic, John, Loewner positions: |K|^(1/n) mean S(P K) >= c5 S(K), c5 reported",
            hyperplane::hyper6),
        reg("L-ZON-1", Zonoid, "",
            "zonoids: min |P Z| <= (n b_n / (n-1)) |Z|^((n-1)/n)", zonoid::lzon1),
        reg("T-ZON-2", Zonoid, "k",
            "zonoids: min over k-subspaces |P_F Z| <= (n b_n^(n-k) / k) |Z|^(k/n)", zonoid::tzon2),
        reg("ZON-VOL", Any, "",
            "for |K| = 1: (partial/n)^n <= |Pi K| <= omega_n (omega_(n-1) partial / (n omega_n))^n and the polar bounds on |Pi* K|",
            zonoid::zonvol),
        reg("MINPROJ", Any, "",
            "min |P K| = r(Pi K) <= (omega_(n-1) partial_K / (n omega_n)) |K|^((n-1)/n)", zonoid::minproj),
        reg("ALEK", Any, "k",
            "Q_k(K) decreases in k, Q_(n-1) >= vrad(K), w(K) >= Q_1(K)", quermass::alek),
        reg("S-INRADIUS", Any, "",
            "S(K) <= n |K| / r(K)", hyperplane::s_inradius),
        reg("T-QUER-1", Any, "p",
            "|K|^(1/n) min V_(n-1-p)(P K) <= ((p+1) omega_(n-1) partial_K / (n omega_n)) V_(n-p)(K), and (p+1) b_n for zonoids",
            quermass::quer1),
        reg("T-QUER-2", Any, "p",
            "|K|^(1/n) mean V_(n-1-p)(P K) <= ((p+1) omega_(n-1) / (n omega_n)) (S(K)/|K|^((n-1)/n)) V_(n-p)(K)",
            quermass::quer2),
        reg("T-QUER-3", Any, "p",
            "mean V_(n-1-p)(P K) >= (omega_(n-1) / omega_n^((n-1-p)/(n-p))) V_(n-p)(K)^((n-1-p)/(n-p))", quermass::quer3),
        reg("T-QUER-4", Positioned, "position,p",
            "classical positions with r(K) >= c0 |K|^(1/n): |K|^(1/n) mean V_(n-1-p)(P K) >= (omega_(n-1) c0^(p/(n-p)) / omega_n^((n-1-p)/(n-p))) V_(n-p)(K)",
            quermass::quer4),
        reg("FGM", Any, "k,p,F",
            "V_(n-p)(K)/|K| >= V_(k-p)(P_F K) / (C(n-k+p, n-k) |P_F K|)", quermass::fgm),
        reg("L-HIGHER-1", Any, "k,F",
            "S(K)/|K| >= (n / (k(n-k+1))) S(P_F K)/|P_F K|", higher::lhigher1),
        reg("T-HIGHER-2", Zonoid, "k",
            "zonoids: |Z|^((n-k)/n) min S(P_F Z) <= (n-k+1) b_n^(n-k) S(Z)", higher::higher2),
        reg("T-HIGHER-5", Any, "k",
            "|K|^((n-k)/n) mean S(P_F K) <= (k(n-k+1)/n) S(K) p_k(K)", higher::higher5),
        reg("T-HIGHER-6", Any, "k",
            "mean S(P_F K) >= (k omega_k / (n omega_n)^((k-1)/(n-1))) S(K)^((k-1)/(n-1))", higher::higher6),
        reg("T-HIGHER-7", Positioned, "position,k",
            "classical positions: |K|^((n-k)/n) mean S(P_F K) >= k omega_k / ((n omega_n)^((k-1)/(n-1)) (c0 n)^((n-k)/(n-1))) S(K)",
            higher::higher7),
        reg("ZON-VOL-ID", Any, "",
            "|Pi K| = (1/n) sum_i a_i |P_(u_i perp) Pi K| over the facets (a_i, u_i) of K", zonoid::zonvol_id),
        reg("CK-IDENT", Any, "",
            "Cauchy: S(K) = (n omega_n / omega_(n-1)) mean |P K|; mean S(P K) = ((n-1) omega_(n-1) / omega_(n-2)) mean over (n-2)-subspaces of |P_F K|",
            hyperplane::ck_ident),
        reg("BALL-EQ", BallApprox, "",
            "on ball approximants |K|^(1/n) min S(P K) / (b_n S(K)) lies within [(r/R)^(n-1), (R/r)^(n-1)]", hyperplane::ball_eq),
    ]
}

pub fn check(id: &str) -> Result<Box<dyn Check>> {
    checks().into_iter().find(|c| c.spec().id == id).ok_or_else(|| {
        let known: Vec<_> = checks().iter().map(|c| c.spec().id).collect();
        GeomError::Inadmissible(format!("unknown check '{id}' (known: {})", known.join(", ")))
    })
}

