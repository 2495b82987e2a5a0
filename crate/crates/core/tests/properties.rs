use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use cherednik_core::cherednik::AlgebraContext;
use cherednik_core::coinv::Coinvariants;
use cherednik_core::exactfield::ParameterSet;
use cherednik_core::exec::Execution;
use cherednik_core::jack::{expected_weight, JackEngine};
use cherednik_core::polyring::{MultiIndex, Polynomial};
use cherednik_core::reflgroup::enumerate_group;
use cherednik_core::Error;

const GROUPS: [(u32, u32, usize); 5] = [(1, 1, 3), (2, 1, 2), (3, 1, 2), (2, 2, 3), (4, 2, 2)];

/// Up to five terms of degree ≤ 3 with coefficients q·ζ^j.
fn terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64, u32)>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), -5i64..=5, 1i64..=4, 0u32..4), 0..5)
}

fn build(ctx: &AlgebraContext, raw: &[(Vec<u32>, i64, i64, u32)]) -> Polynomial {
    let k = ctx.field();
    let mut f = ctx.zero();
    for (exps, num, den, j) in raw {
        let mut e: Vec<u32> = exps.iter().take(ctx.n()).copied().collect();
        while e.iter().sum::<u32>() > 3 {
            let top = e.iter().position(|&x| x > 0).unwrap();
            e[top] -= 1;
        }
        let c = k.zeta_pow(*j as i64).scale(&BigRational::new((*num).into(), (*den).into()));
        f.add_term(MultiIndex::new(e), &c);
    }
    f
}

fn context(idx: usize, kappa: i64) -> AlgebraContext {
    let (r, p, n) = GROUPS[idx];
    AlgebraContext::generic(r, p, n, BigRational::from_integer(kappa.into())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dunkl_is_linear_and_commuting(idx in 0..GROUPS.len(), kappa in 0i64..=2, a in terms(), b in terms()) {
        let ctx = context(idx, kappa);
        let (f, g) = (build(&ctx, &a), build(&ctx, &b));
        let sum = &f + &g;
        for i in 0..ctx.n() {
            let lhs = ctx.dunkl(i, &sum).unwrap();
            let rhs = &ctx.dunkl(i, &f).unwrap() + &ctx.dunkl(i, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
            for j in i + 1..ctx.n() {
                let yij = ctx.dunkl(i, &ctx.dunkl(j, &f).unwrap()).unwrap();
                let yji = ctx.dunkl(j, &ctx.dunkl(i, &f).unwrap()).unwrap();
                prop_assert_eq!(yij, yji);
            }
        }
    }

    #[test]
    fn group_acts_on_the_left(idx in 0..GROUPS.len(), a in terms(), u in any::<prop::sample::Index>(), v in any::<prop::sample::Index>()) {
        let ctx = context(idx, 0);
        let f = build(&ctx, &a);
        let group = enumerate_group(ctx.r(), ctx.n());
        let (u, v) = (u.get(&group), v.get(&group));
        let uv = u.compose(v).unwrap();
        prop_assert_eq!(f.act(&uv), f.act(v).act(u));
        prop_assert_eq!(f.act(&uv).act(&uv.inverse()), f);
    }

    #[test]
    fn casimir_commutes_with_dunkl_at_kappa_zero(idx in 0..GROUPS.len(), a in terms()) {
        let ctx = context(idx, 0);
        let f = build(&ctx, &a);
        prop_assert!(ctx.casimir_h(&f).unwrap().is_zero());
        let hf = ctx.casimir_h(&f).unwrap();
        for i in 0..ctx.n() {
            prop_assert_eq!(ctx.casimir_h(&ctx.dunkl(i, &f).unwrap()).unwrap(), ctx.dunkl(i, &hf).unwrap());
        }
    }

    #[test]
    fn normal_form_is_a_linear_projection(idx in 0..3usize, a in terms(), b in terms(), gen in any::<prop::sample::Index>()) {
        let (r, p, n) = [(2, 1, 2), (3, 3, 3), (2, 1, 3)][idx];
        let coinv = Coinvariants::new(ParameterSet::generic(r, p).unwrap(), n, Execution::Sequential).unwrap();
        let ctx = coinv.context();
        let (f, g) = (build(ctx, &a), build(ctx, &b));
        let nf = coinv.normal_form(&f);
        prop_assert_eq!(coinv.normal_form(&nf), nf.clone());
        prop_assert_eq!(coinv.normal_form(&(&f + &g)), &nf + &coinv.normal_form(&g));
        let generator = gen.get(coinv.generators());
        prop_assert!(coinv.normal_form(&(generator * &f)).is_zero());
    }

    #[test]
    fn random_intertwiner_paths_agree(idx in 0..GROUPS.len(), kappa in 0i64..=1, seed in any::<u64>(), mu in prop::collection::vec(0u32..=2, 3)) {
        let ctx = context(idx, kappa);
        let mu = MultiIndex::new(mu.into_iter().take(ctx.n()).collect());
        let engine = JackEngine::new(Arc::new(ctx));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let via_random = engine.jack_f_random_path(&mu, &mut rng).unwrap();
        prop_assert_eq!(&via_random.f, &engine.jack_f(&mu).unwrap().f);
    }

    #[test]
    fn weights_hold_for_random_parameters(idx in 0..GROUPS.len(), seed in any::<u64>(), mu in prop::collection::vec(0u32..=2, 3)) {
        let (r, p, n) = GROUPS[idx];
        let params = ParameterSet::random_generic(r, p, seed).unwrap().with_kappa(BigRational::from_integer(1.into()));
        let mu = MultiIndex::new(mu.into_iter().take(n).collect());
        let engine = JackEngine::new(Arc::new(AlgebraContext::new(params.clone(), n).unwrap()));
        match engine.jack_f(&mu) {
            Ok(rec) => {
                prop_assert_eq!(engine.context().tweight_of(&rec.f).unwrap(), expected_weight(&mu, &params));
            }
            Err(Error::GenericityFailure { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

