//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use qsuper::hookcomb::{kernel_dim_prediction, HookPartition};
use qsuper::invariants::{
    classical_check, ideal_degree_component, quantum_minor, sergeev_polynomial, InvariantParams, InvariantTheory,
    StandardTableau,
};
use qsuper::rmat_hecke::{rcheck_operator, sym_skew_bases, verify_frt, verify_hecke_relations};
use qsuper::uqaction::Action;
use qsuper::{AlgebraPresentation, CoeffMatrix, Family, Laurent, NCElement};

const SEED: u64 = 0x5eed_0001;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_params() -> Vec<InvariantParams> {
    let pairs = [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];
    let mut out = Vec::new();
    for &(k, l) in &pairs {
        for &(r, s) in &pairs {
            for &(m, n) in &pairs {
                out.push(InvariantParams::new(k, l, r, s, m, n).unwrap());
            }
        }
    }
    out
}

fn flatness() -> Outcome {
    let mut checked = 0;
    for k in 0..=2 {
        for l in 0..=2 {
            for r in 0..=2 {
                for s in 0..=2 {
                    if k + l == 0 || r + s == 0 {
                        continue;
                    }
                    for pres in [
                        AlgebraPresentation::m(k, l, r, s),
                        AlgebraPresentation::mbar(k, l, r, s),
                        AlgebraPresentation::mtilde(k, l, r, s),
                    ] {
                        let pres = pres.map_err(|e| e.to_string())?;
                        let rep = pres.verify_flatness(4);
                        ensure(rep.pass, || {
                            format!("{:?} ({k},{l},{r},{s}): {}", pres.kind(), serde_json_lite(&rep.overlaps.unresolved))
                        })?;
                        checked += rep.degrees.len();
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (algebra, degree) pairs, all overlaps resolve"))
}

fn serde_json_lite(v: &[String]) -> String {
    v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn associativity() -> Outcome {
    let specs = ["M:2,1,2,1", "Mb:2,1,2,1", "Mt:2,1,2,1", "P:1,1,1,1,1,1", "P:2,1,1,2,2,1"];
    for spec in specs {
        let pres = AlgebraPresentation::from_spec(spec).map_err(|e| e.to_string())?;
        let rep = pres.associativity_trials(1000, SEED);
        ensure(rep.pass, || format!("{spec}: {}", serde_json_lite(&rep.failures)))?;
    }
    Ok(format!("1000 seeded trials each on {}", specs.join(", ")))
}

fn invariance() -> Outcome {
    let mut count = 0;
    for prm in small_params() {
        let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
        let act = Action::new(th.p()).map_err(|e| e.to_string())?;
        for a in prm.rows().iter() {
            for b in prm.cols().iter() {
                let x = th.x(a, b).unwrap();
                ensure(act.is_invariant(x).unwrap(), || format!("X[{a},{b}] not invariant for {prm:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} elements X_ab over 512 parameter sets"))
}

fn relation_suite() -> Outcome {
    let mut count = 0;
    let mut aside = (0, 0);
    for prm in small_params() {
        let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
        let rep = th.verify_x_relations();
        ensure(rep.pass, || format!("{prm:?}: {}", serde_json_lite(&rep.failures)))?;
        count += rep.checked();
        if let Some(f) = rep.aside.values().next() {
            aside.0 += f.checked;
            aside.1 += f.failed;
        }
    }
    Ok(format!(
        "{count} relation instances vanish; alternative X_ai reading fails {}/{}",
        aside.1, aside.0
    ))
}

fn psi_homomorphism() -> Outcome {
    let mut count = 0;
    for prm in small_params() {
        let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
        let rep = th.verify_psi_rules();
        ensure(rep.pass, || format!("{prm:?}: {}", serde_json_lite(&rep.failures)))?;
        count += rep.checked();
    }
    Ok(format!("{count} rule images vanish"))
}

fn fft() -> Outcome {
    let mut dims = Vec::new();
    for (k, l, r, s, m, n) in [(1, 1, 1, 1, 2, 2), (2, 0, 2, 0, 2, 0), (1, 0, 1, 0, 1, 0), (1, 1, 1, 1, 1, 1)] {
        let prm = InvariantParams::new(k, l, r, s, m, n).unwrap();
        let rep = InvariantTheory::new(prm).and_then(|t| t.fft_check(3)).map_err(|e| e.to_string())?;
        let d: Vec<String> = rep.degrees.iter().map(|d| d.dim_inv.unwrap().to_string()).collect();
        ensure(rep.overall_pass, || format!("{prm:?}: {rep:?}"))?;
        dims.push(format!("({k},{l},{r},{s},{m},{n}):[{}]", d.join(",")));
    }
    Ok(format!("invariant dims {}", dims.join(" ")))
}

fn sft_kernels() -> Outcome {
    let mut out = Vec::new();
    for ((k, l, r, s, m, n), max) in [((2, 0, 2, 0, 1, 0), 4), ((1, 1, 1, 1, 0, 1), 3)] {
        let prm = InvariantParams::new(k, l, r, s, m, n).unwrap();
        let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
        let mut dims = Vec::new();
        for deg in 0..=max {
            let ker = th.kernel_psi_basis(deg).map_err(|e| e.to_string())?.len() as u64;
            let pred = kernel_dim_prediction(k, l, r, s, m, n, deg);
            ensure(ker == pred, || format!("{prm:?} N={deg}: kernel {ker}, predicted {pred}"))?;
            dims.push(ker.to_string());
        }
        out.push(format!("({k},{l},{r},{s},{m},{n}):[{}]", dims.join(",")));
    }
    Ok(format!("kernel dims {}", out.join(" ")))
}

fn sft_stable() -> Outcome {
    let cases = [(2, 1, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1), (2, 0, 1, 0, 1, 0), (1, 1, 2, 1, 1, 1), (2, 2, 1, 1, 1, 1)];
    for (k, l, r, s, m, n) in cases {
        let prm = InvariantParams::new(k, l, r, s, m, n).unwrap();
        assert!(prm.in_stable_range());
        let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
        for deg in 0..=3 {
            let ker = th.kernel_psi_basis(deg).map_err(|e| e.to_string())?.len();
            ensure(ker == 0, || format!("{prm:?} N={deg}: kernel {ker}"))?;
        }
    }
    Ok(format!("{} parameter sets, N <= 3, all kernels zero", cases.len()))
}

fn sft_minor_ideal() -> Outcome {
    let prm = InvariantParams::new(2, 0, 2, 0, 1, 0).unwrap();
    let th = InvariantTheory::new(prm).map_err(|e| e.to_string())?;
    let minor = quantum_minor(&[1, 2], &[2, 1], th.mtilde()).map_err(|e| e.to_string())?;
    ensure(th.psi(&minor).unwrap().is_zero(), || "the 2x2 minor does not vanish".into())?;
    let mut dims = Vec::new();
    for deg in 0..=4 {
        let ideal = ideal_degree_component(std::slice::from_ref(&minor), th.mtilde(), deg).map_err(|e| e.to_string())?;
        let ker = th.kernel_psi_basis(deg).map_err(|e| e.to_string())?.len();
        ensure(ideal == ker, || format!("N={deg}: ideal {ideal}, kernel {ker}"))?;
        dims.push(ideal.to_string());
    }
    Ok(format!("minor maps to 0; ideal = kernel dims [{}]", dims.join(",")))
}

fn hecke() -> Outcome {
    for (k, l) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        let rep = verify_hecke_relations(k, l, 3).map_err(|e| e.to_string())?;
        ensure(rep.pass, || format!("({k},{l}) r=3: {rep:?}"))?;
        if k + l <= 2 {
            let rep = verify_hecke_relations(k, l, 4).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("({k},{l}) r=4: {rep:?}"))?;
        }
        let h = rcheck_operator(k, l).unwrap();
        let (sym, skew) = sym_skew_bases(k, l).unwrap();
        ensure(sym.len() + skew.len() == (k + l) * (k + l), || "eigenbasis sizes".into())?;
        for (vs, ev) in [(&sym, Laurent::q()), (&skew, -Laurent::q_pow(-1))] {
            for v in vs.iter() {
                let hv = h.mul_vec(v).unwrap();
                let want: Vec<Laurent> = v.iter().map(|x| x * &ev).collect();
                ensure(hv == want, || format!("({k},{l}) eigenvector {v:?}"))?;
            }
        }
        let all: Vec<Vec<Laurent>> = sym.iter().chain(skew.iter()).cloned().collect();
        let n = (k + l) * (k + l);
        let rank = CoeffMatrix::from_columns(n, &all).unwrap().rank();
        ensure(rank == n, || format!("({k},{l}) eigenvectors span {rank} of {n}"))?;
    }
    Ok("quadratic, braid and far commutation on r = 3, 4; eigenbases exact".into())
}

fn frt() -> Outcome {
    let rep = verify_frt(2, 1, 2, 1).map_err(|e| e.to_string())?;
    ensure(rep.pass, || serde_json_lite(&rep.failures))?;
    let rep2 = verify_frt(1, 1, 1, 1).map_err(|e| e.to_string())?;
    ensure(rep2.pass, || serde_json_lite(&rep2.failures))?;
    Ok(format!("{} entries of M(2|1) and {} of M(1|1) agree", rep.checked, rep2.checked))
}

fn classical() -> Outcome {
    let cases = [(2, 0, 2, 0, 1, 0), (1, 1, 1, 1, 1, 1), (2, 1, 1, 2, 1, 1), (2, 2, 2, 2, 2, 2)];
    for (k, l, r, s, m, n) in cases {
        let prm = InvariantParams::new(k, l, r, s, m, n).unwrap();
        let rep = classical_check(prm).map_err(|e| e.to_string())?;
        ensure(rep.overall_pass, || format!("{rep:?}"))?;
    }
    let prm = InvariantParams::new(2, 0, 2, 0, 1, 0).unwrap();
    let th = InvariantTheory::classical(prm).map_err(|e| e.to_string())?;
    let tab = StandardTableau::row_reading(&HookPartition::new(vec![1, 1]));
    let p = sergeev_polynomial(&tab, &[1, 2], &[1, 2], th.mtilde()).map_err(|e| e.to_string())?;
    let minor = th.mtilde().parse_element("Tt[1,1] Tt[2,2] - Tt[2,1] Tt[1,2]").unwrap();
    let minor = th.mtilde().normal_form(&minor).unwrap();
    ensure(p == minor, || format!("shape (1,1) polynomial {p} differs from {minor}"))?;
    let image = th.psi(&p).map_err(|e| e.to_string())?;
    ensure(image.is_zero(), || format!("classical image {image}"))?;
    let q = InvariantTheory::new(prm).unwrap();
    let x = q.x(1, 1).unwrap();
    ensure(!x.is_zero() && *x == NCElement::generator(q.p().gen(Family::T, 1, 1).unwrap()).concat(
        &NCElement::generator(q.p().gen(Family::Tbar, 1, 1).unwrap()),
    ), || "X_11".into())?;
    Ok(format!("{} parameter sets supercommute at q=1; 2x2 polynomial = minor, in kernel", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("PBW flatness of M, Mbar, Mtilde", flatness),
        ("associativity of normal forms", associativity),
        ("invariance of X_ab", invariance),
        ("relations among X, T, Tbar", relation_suite),
        ("Psi respects the tilde relations", psi_homomorphism),
        ("FFT: invariants = image of Psi", fft),
        ("SFT: kernel dimensions", sft_kernels),
        ("SFT: injective range", sft_stable),
        ("SFT: quantum minor ideal", sft_minor_ideal),
        ("R-matrix and Hecke relations", hecke),
        ("FRT relation", frt),
        ("classical limit", classical),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:2}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2}: FAIL  {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
