//! One test per process: it toggles the global execution mode and cache.

use regprod::exec::Execution;
use regprod::oracles::q_product_oracle;
use regprod::regprod::{regprod_eval, SequenceSpec};
use regprod::rug::Complex;
use regprod::tmdirichlet::{self, Series};
use regprod::{ApproxComplex, ApproxReal, PrecisionContext};

fn bits(x: &ApproxReal) -> (String, String) {
    (x.value().to_string_radix(16, None), x.radius().to_string_radix(16, None))
}

fn snapshot(ctx: &PrecisionContext) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (re, im) in [(0.0, 0.0), (-3.5, 2.0), (16.5, 3.0), (2.0, 0.0)] {
        for series in [Series::G, Series::F] {
            let s = ApproxComplex::exact(Complex::with_val(ctx.working_bits(), (re, im)));
            let v = tmdirichlet::evaluate(series, &s, ctx, Default::default()).unwrap().value;
            out.push(bits(&v.re));
            out.push(bits(&v.im));
        }
    }
    out.push(bits(&tmdirichlet::g_prime0(ctx).unwrap()));
    out.push(bits(&tmdirichlet::f_prime0(ctx).unwrap()));
    out.push(bits(&regprod_eval(&SequenceSpec::Odious, ctx).unwrap().value));
    out.push(bits(&q_product_oracle(300_000, ctx).unwrap().value));
    out
}

#[test]
fn results_are_independent_of_cache_and_execution_mode() {
    let ctx = PrecisionContext::default();

    tmdirichlet::set_cache_enabled(true);
    tmdirichlet::clear_cache();
    let cold = snapshot(&ctx);
    let warm = snapshot(&ctx);
    assert_eq!(cold, warm, "cache hits changed a result");

    tmdirichlet::set_cache_enabled(false);
    assert!(!tmdirichlet::cache_enabled());
    let uncached = snapshot(&ctx);
    assert_eq!(cold, uncached, "disabling the cache changed a result");

    // requesting a single point must give the same bits as a batch
    let s = ApproxComplex::real(ApproxReal::from_int(2, ctx.working_bits()));
    let alone = tmdirichlet::g(&s, &ctx).unwrap().value.re;
    // g(2) is the first entry of the fourth point
    assert_eq!(cold[12], bits(&alone));

    Execution::set_current(Execution::Sequential);
    let sequential = snapshot(&ctx);
    assert_eq!(cold, sequential, "sequential execution changed a result");
    #[cfg(feature = "parallel")]
    {
        Execution::set_current(Execution::Parallel);
        assert_eq!(Execution::current(), Execution::Parallel);
        assert_eq!(cold, snapshot(&ctx));
    }
    tmdirichlet::set_cache_enabled(true);
}
