//! End-to-end acceptance battery. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails. Set HITKIT_ACCEPTANCE_FULL=1 to include the
//! GL_4(F_2) Steinberg sweep.

use hitkit::grouprep::{steinberg_idempotent, twisted_idempotent};
use hitkit::invariants::{dickson_q, dickson_q_chi, verify_lemma_vn, LineSet};
use hitkit::linalg::{rank_packed_f2, EchelonBuilder, MatrixGF, Row};
use hitkit::poly::{degree_basis, Polynomial};
use hitkit::quotient_ring::{
    affine_ring, cuspidal_dim, embedding_kernel_check, ideal_rel_check, r_ring, top_degree_r,
    top_indecomposable_check,
};
use hitkit::simplicial::{build_affine_k, build_delta, check_matroid_exchange, f_vector, f_vector_brute_force};
use hitkit::steenrod2::{bg_dims, bg_power_count, decomposition_check, mahowald_check};
use hitkit::steenrod_action::{chi_p, chi_trick_check, quot_dim, steenrod_p};
use hitkit::{Field, FieldElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

const SIX: [(usize, u32, u32); 6] = [(2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2)];

fn f(q: u32) -> Field {
    Field::builtin(q).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, actual: T) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, got {actual:?}"))
    }
}

fn holds(what: &str, ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} does not hold"))
    }
}

fn steinberg_dim(n: usize, q: u32) -> usize {
    q.pow((n * (n - 1) / 2) as u32) as usize
}

fn walker_wood() -> Outcome {
    for (n, d, e) in [(2, 1, 2), (3, 4, 8), (4, 11, 64)] {
        expect(&format!("dim Quot^{d}, n={n}"), e, quot_dim(n, d, &f(2)).unwrap())?;
    }
    Ok(())
}

fn odd_steinberg_quotient() -> Outcome {
    for (n, k, e) in [(2usize, 1u32, 3usize), (2, 2, 3), (3, 1, 27)] {
        let d = top_degree_r(n, 3, k);
        expect(&format!("dim Quot^{d}, n={n} k={k}"), e, quot_dim(n, d, &f(3)).unwrap())?;
    }
    Ok(())
}

fn top_degree_dimension() -> Outcome {
    for (n, q, k) in SIX {
        let r = r_ring(n, &f(q), k).unwrap();
        let d = r.top_degree();
        expect(&format!("dim R^d for {n},{q},{k}"), steinberg_dim(n, q), r.dim(d).unwrap())?;
        for m in d + 1..=d + 3 {
            expect(&format!("dim R^{m} for {n},{q},{k}"), 0, r.dim(m).unwrap())?;
        }
    }
    Ok(())
}

fn quot_agreement() -> Outcome {
    for (n, q, k) in SIX {
        let fq = f(q);
        let r = r_ring(n, &fq, k).unwrap();
        for m in 0..=r.top_degree() {
            expect(
                &format!("Quot^{m} for {n},{q},{k}"),
                quot_dim(n, m, &fq).unwrap(),
                r.quot_dim(m).unwrap(),
            )?;
        }
    }
    Ok(())
}

fn top_indecomposable() -> Outcome {
    for (n, q, k) in SIX {
        let r = r_ring(n, &f(q), k).unwrap();
        holds(&format!("indecomposability for {n},{q},{k}"), top_indecomposable_check(&r).unwrap())?;
    }
    Ok(())
}

fn cuspidal() -> Outcome {
    for (n, q, e) in [(3usize, 2u32, 3usize), (4, 2, 21), (3, 3, 16)] {
        let fq = f(q);
        let top = q.pow(n as u32 - 1) - n as u32;
        expect(&format!("dim Quot^{top}, n={n} q={q}"), e, quot_dim(n, top, &fq).unwrap())?;
        expect(&format!("affine top, n={n} q={q}"), e, affine_ring(n, &fq).unwrap().dim(top).unwrap())?;
        expect(&format!("cuspidal_dim, n={n} q={q}"), e, cuspidal_dim(n, &fq).unwrap())?;
    }
    Ok(())
}

fn hilbert_cross_validation() -> Outcome {
    for (n, q, k) in SIX {
        let fq = f(q);
        let delta = build_delta(n, &fq, k as usize).unwrap();
        let mobius = f_vector(&delta).unwrap();
        let d = top_degree_r(n, q, k) as usize;
        expect(&format!("h_d via Möbius for {n},{q},{k}"), steinberg_dim(n, q) as i128, mobius.h[d])?;
        if delta.vertex_count() <= 14 {
            let brute = f_vector_brute_force(&delta).unwrap();
            expect(&format!("f-vector paths for {n},{q},{k}"), &brute.f, &mobius.f)?;
            let hs: Vec<i128> = r_ring(n, &fq, k)
                .unwrap()
                .hilbert_series(d as u32)
                .unwrap()
                .into_iter()
                .map(|x| x as i128)
                .collect();
            expect(&format!("Hilbert series vs h-vector for {n},{q},{k}"), &brute.h, &hs)?;
        }
    }
    Ok(())
}

fn matroid_exchange() -> Outcome {
    for (n, q, k) in SIX {
        let delta = build_delta(n, &f(q), k as usize).unwrap();
        if delta.vertex_count() <= 14 {
            holds(&format!("exchange for Δ {n},{q},{k}"), check_matroid_exchange(&delta).unwrap())?;
        }
    }
    for (n, q) in [(3, 2), (2, 3)] {
        holds(&format!("exchange for K {n},{q}"), check_matroid_exchange(&build_affine_k(n, &f(q)).unwrap()).unwrap())?;
    }
    Ok(())
}

fn mui_product_identity() -> Outcome {
    for (q, s, r, n) in [(2, 0, 1, 2), (2, 0, 1, 3), (2, 1, 1, 2), (2, 1, 1, 3), (3, 0, 1, 2), (3, 0, 2, 2), (3, 1, 1, 2)] {
        holds(&format!("identity for q={q} s={s} r={r} n={n}"), verify_lemma_vn(&f(q), s, r, n).unwrap())?;
    }
    Ok(())
}

fn ideal_relations_and_kernels() -> Outcome {
    for (n, q, k) in [(2usize, 2u32, 1u32), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
        let fq = f(q);
        let ys: Vec<Row> = LineSet::all(&fq, n).reps().to_vec();
        if ys.len() < 3 {
            return Err(format!("fewer than three lines for {n},{q}"));
        }
        for y in &ys {
            holds(&format!("ideal relation for {n},{q},{k}, y={y:?}"), ideal_rel_check(n, &fq, k, y).unwrap())?;
        }
        holds(&format!("embedding kernel for {n},{q},{k}"), embedding_kernel_check(n, &fq, k).unwrap())?;
    }
    Ok(())
}

fn dickson_formulas() -> Outcome {
    for q in [2, 3] {
        let fq = f(q);
        for m in [2usize, 3] {
            for j in 0..=m {
                let def = dickson_q(m, j, &fq).unwrap();
                holds(&format!("Q_{{{m},{j}}} full sum, q={q}"), def == dickson_q_chi(m, j, 0, &fq).unwrap())?;
                holds(&format!("Q_{{{m},{j}}} tail sum, q={q}"), def == dickson_q_chi(m, j, m - j, &fq).unwrap())?;
            }
            let e_m = hitkit::invariants::elem_sym_qpow(m, &fq, m, &(0..m).collect::<Vec<_>>()).unwrap();
            let deg = (q.pow(m as u32) - 1) / (q - 1) - m as u32;
            holds(&format!("Q_{{{m},0}} = χ(P^{deg})(e_m), q={q}"), dickson_q(m, 0, &fq).unwrap() == chi_p(deg, &e_m))?;
        }
    }
    Ok(())
}

fn steinberg_summand_decomposition() -> Outcome {
    let mut ns = vec![1, 2, 3];
    if std::env::var_os("HITKIT_ACCEPTANCE_FULL").is_some() {
        ns.push(4);
    }
    for n in ns {
        let r = decomposition_check(n).unwrap();
        if n == 2 {
            expect("n=2 summand dims", vec![0, 1, 1, 1, 1], r.summand.clone())?;
        }
        expect(&format!("Brown-Gitler vs tuples, n={n}"), &r.tuple_count, &r.brown_gitler)?;
        expect(&format!("summand vs tuples, n={n}"), &r.tuple_count, &r.summand)?;
        holds(&format!("generator relations, n={n}"), r.relations_hold)?;
        holds(&format!("Inoue basis, n={n}"), r.inoue_basis)?;
    }
    Ok(())
}

fn mahowald_bookkeeping() -> Outcome {
    for j in 1..=3 {
        holds(&format!("Mahowald j={j}"), mahowald_check(j, 12).unwrap())?;
    }
    for n in 1..=3u32 {
        let dims = bg_dims(1 << n, 12).unwrap();
        let counts: Vec<usize> = (0..=12).map(|m| bg_power_count(n, m)).collect();
        expect(&format!("BG({})", 1 << n), counts, dims)?;
    }
    Ok(())
}

fn random_poly(field: &Field, n: usize, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let basis = degree_basis(n, d).unwrap();
    let mut f = Polynomial::zero(field, n);
    for m in basis.monomials() {
        if rng.gen_bool(0.5) {
            let units = field.units();
            let c = units[rng.gen_range(0..units.len())];
            f = f.add(&Polynomial::term(field, c, m.clone())).unwrap();
        }
    }
    f
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let q = [2, 3, 4, 5][case % 4];
        let fq = f(q);
        let n = 2 + case % 2;
        let a = random_poly(&fq, n, rng.gen_range(0..=3), &mut rng);
        let b = random_poly(&fq, n, rng.gen_range(0..=3), &mut rng);
        let k = rng.gen_range(0..=4);
        let lhs = steenrod_p(k, &a.mul(&b).unwrap());
        let mut rhs = Polynomial::zero(&fq, n);
        for i in 0..=k {
            rhs = rhs.add(&steenrod_p(i, &a).mul(&steenrod_p(k - i, &b)).unwrap()).unwrap();
        }
        expect(&format!("Cartan case {case}"), &rhs, &lhs)?;

        let k = rng.gen_range(1..=5);
        let mut s = Polynomial::zero(&fq, n);
        for i in 0..=k {
            s = s.add(&steenrod_p(i, &chi_p(k - i, &a))).unwrap();
        }
        holds(&format!("antipode case {case}"), s.is_zero())?;

        let k = rng.gen_range(1..=3);
        holds(&format!("χ-trick case {case}"), chi_trick_check(&a, &b, k).unwrap())?;
    }

    let mut qs: Vec<u32> = vec![4, 8, 9];
    qs.extend((2..256).filter(|&p| (2..p).all(|d| p % d != 0)));
    for q in qs {
        let fq = f(q);
        let els = fq.elements();
        for &x in &els {
            if !x.is_zero() && fq.mul(x, fq.inverse(x).unwrap()) != fq.one() {
                return Err(format!("inverse fails in F_{q}"));
            }
            for &y in &els {
                if fq.add(x, y) != fq.add(y, x) || fq.mul(x, y) != fq.mul(y, x) || fq.sub(fq.add(x, y), y) != x {
                    return Err(format!("commutativity fails in F_{q}"));
                }
                if q > 64 {
                    continue;
                }
                for &z in &els {
                    let assoc = fq.mul(fq.mul(x, y), z) == fq.mul(x, fq.mul(y, z))
                        && fq.add(fq.add(x, y), z) == fq.add(x, fq.add(y, z));
                    let dist = fq.mul(x, fq.add(y, z)) == fq.add(fq.mul(x, y), fq.mul(x, z));
                    if !assoc || !dist {
                        return Err(format!("ring axioms fail in F_{q}"));
                    }
                }
            }
        }
    }

    let f2 = f(2);
    for trial in 0..100 {
        let rows = rng.gen_range(1..90);
        let cols = rng.gen_range(1..150);
        let data: Vec<Row> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(0.3) { FieldElem::ONE } else { FieldElem::ZERO }).collect())
            .collect();
        let m = MatrixGF::from_rows(&f2, cols, &data).unwrap();
        let mut packed = EchelonBuilder::with_packing(&f2, cols, true).unwrap();
        let mut plain = EchelonBuilder::with_packing(&f2, cols, false).unwrap();
        for r in &data {
            packed.insert(r.clone()).unwrap();
            plain.insert(r.clone()).unwrap();
        }
        let ranks = [m.rank(), rank_packed_f2(&m), packed.rank(), plain.rank()];
        if ranks.iter().any(|&r| r != ranks[0]) {
            return Err(format!("rank paths disagree on trial {trial}: {ranks:?}"));
        }
    }

    for (n, q) in [(2usize, 2u32), (3, 2), (2, 3), (2, 4), (2, 5)] {
        let fq = f(q);
        holds(&format!("st_{n} idempotent over F_{q}"), steinberg_idempotent(n, &fq).unwrap().is_idempotent().unwrap())?;
        for i in 0..q - 1 {
            holds(
                &format!("st_{n}^({i}) idempotent over F_{q}"),
                twisted_idempotent(n, &fq, i).unwrap().is_idempotent().unwrap(),
            )?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("Steinberg quotient of F_2[x_1..x_n] in the top degree", walker_wood),
        ("Steinberg quotient over F_3", odd_steinberg_quotient),
        ("top degree of R(V*,k) and vanishing above it", top_degree_dimension),
        ("Quot of Sym and of R(V*,k) agree up to the top degree", quot_agreement),
        ("top degree of R(V*,k) is P-indecomposable", top_indecomposable),
        ("cuspidal quotient dimension", cuspidal),
        ("Hilbert series against h-vectors", hilbert_cross_validation),
        ("matroid exchange property", matroid_exchange),
        ("Mui product identity", mui_product_identity),
        ("ideal relation and embedding kernels", ideal_relations_and_kernels),
        ("Dickson invariants through the antipode", dickson_formulas),
        ("Steinberg summand of R_{n,2} and Brown-Gitler modules", steinberg_summand_decomposition),
        ("Mahowald dimension bookkeeping", mahowald_bookkeeping),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
