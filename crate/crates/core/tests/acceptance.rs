//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Every check compares a construction against an independent
//! brute-force reference.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use majnet::circuits::{
    bits_of, bound_degree, dual_rail, flatten_depth1, monotonize, reach_oracle, synchronize, Reach, TmConfig,
};
use majnet::gadgets::{
    amplified_vertex, amplify, attach_eventual_gadget, build_clock, build_full_instance, circuit_network_config,
    clock_vertex, compile_bseq_instance, compile_circuit_to_clocked, compile_circuit_to_majority, compile_tm,
    cylinder_input_vertex, label_bit, to_portion, Literal, CLOCK_LABELS, CYLINDER_MAX_DEGREE,
};
use majnet::netcore::{
    find_limit_cycle, trajectory, transient_length_network, Budget, Configuration, Graph, GraphBuilder, Network,
    Threshold, UpdateScheme,
};
use majnet::random;
use majnet::solvers::{predict_conditional, predict_eventual, predict_full, predict_once};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6d61_6a00 + criterion)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bitstrings(traj: &[Configuration]) -> Vec<String> {
    traj.iter().map(|c| c.to_string()).collect()
}

/// The 9-vertex star with the center (vertex 0) active.
fn star_dynamics() -> Outcome {
    let g = ok(Graph::new(9, (1..9).map(|l| (0, l))))?;
    let x = ok("100000000".parse::<Configuration>())?;
    let leaves_first: Vec<usize> = (1..9).chain([0]).collect();
    let two_blocks: Vec<u64> = (0..9).map(|v| if v == 0 { 1 } else { 2 }).collect();
    let cases = [
        ("synchronous", UpdateScheme::synchronous(9), ["100000000", "011111111", "100000000", "011111111"]),
        ("sequential", ok(UpdateScheme::sequential_order(&leaves_first))?, ["100000000", "111111111", "111111111", "111111111"]),
        ("two blocks", ok(UpdateScheme::from_raw(&two_blocks))?, ["100000000", "000000000", "000000000", "000000000"]),
    ];
    for (name, scheme, want) in cases {
        let net = ok(Network::majority(g.clone(), scheme))?;
        let got = bitstrings(&trajectory(&net, &x, 3));
        ensure(got == want, || format!("{name}: got {got:?}, want {want:?}"))?;
    }
    Ok("period-2 flip, all-active and all-inactive fixed points".into())
}

fn clock() -> Outcome {
    let (net, _) = build_clock();
    let x0 = majnet::gadgets::clock_initial();
    let traj = trajectory(&net, &x0, 100);
    for (t, c) in traj.iter().enumerate() {
        for s in 0..CLOCK_LABELS.len() {
            let v = clock_vertex(s);
            ensure(c.get(v) == label_bit(s, t), || format!("vertex {v} wrong at t={t}"))?;
        }
    }
    let cyc = ok(find_limit_cycle(&net, &x0, &Budget::default()))?;
    ensure(cyc.transient == 0 && cyc.period == 3, || format!("transient {} period {}", cyc.transient, cyc.period))?;
    let d = net.graph().max_degree();
    ensure(d <= 3, || format!("max degree {d}"))?;
    Ok(format!("8 labels exact for t <= 100, period 3, transient 0, max degree {d}"))
}

fn gate_networks() -> Outcome {
    let mut rng = rng(3);
    let mut worst = 0;
    for k in 0..120 {
        let n = rng.gen_range(1..=6);
        let gates = rng.gen_range(1..=20);
        let m = rng.gen_range(1..=3);
        let c = random::monotone_circuit(&mut rng, n, gates, m, 4);
        let (net, w) = ok(compile_circuit_to_majority(&c))?;
        let d: usize = w.get_stat("gate_degree").and_then(|s| s.parse().ok()).unwrap_or(0);
        ensure(d <= 4, || format!("circuit {k}: buffered gate degree {d}"))?;
        let deg = net.graph().max_degree();
        ensure(d == 0 || deg < 2 * d, || format!("circuit {k}: degree {deg} > 2*{d}-1"))?;
        worst = worst.max(deg);
        for v in 0..1u64 << n {
            let x = bits_of(v, n);
            let y = net.global_step(&circuit_network_config(&w, &x), 0);
            let want = ok(c.evaluate(&x))?;
            for &(g, lit) in &w.observe {
                let Literal::Pos(j) = lit else { return Err(format!("circuit {k}: unexpected literal {lit}")) };
                ensure(y.get(g) == want[j], || format!("circuit {k}, input {v}: output {j} wrong"))?;
            }
        }
    }
    Ok(format!("120 circuits, all inputs, max compiled degree {worst}"))
}

fn circuit_pipeline() -> Outcome {
    let mut rng = rng(4);
    let mut total = 0;
    while total < 60 {
        let n = rng.gen_range(1..=6);
        let gates = rng.gen_range(1..=10);
        let c = random::iterable_circuit(&mut rng, n, gates);
        let (mono, _) = monotonize(&c);
        for v in 0..1u64 << n {
            let x = bits_of(v, n);
            let want = dual_rail(&ok(c.evaluate(&x))?);
            ensure(ok(mono.evaluate(&dual_rail(&x)))? == want, || format!("monotonize differs on {v}"))?;
        }
        let bounded = ok(bound_degree(&mono))?;
        for v in 0..1u64 << (2 * n) {
            let y = bits_of(v, 2 * n);
            ensure(ok(bounded.evaluate(&y))? == ok(mono.evaluate(&y))?, || format!("degree bounding differs on {v}"))?;
        }
        let layered = ok(synchronize(&bounded))?;
        let (flat, emb) = ok(flatten_depth1(&layered.circuit))?;
        let (w, d) = (emb.n, emb.depth);
        for v in 0..1u64 << n {
            let x = dual_rail(&bits_of(v, n));
            let mut z = emb.lift(&layered.lift(&x));
            for t in 0..=6 {
                let want = layered.lift(&ok(bounded.iterate(&x, t))?);
                let sync = ok(layered.circuit.iterate(&layered.lift(&x), t))?;
                ensure(sync == want, || format!("synchronize differs at t={t}"))?;
                ensure(z[..w] == want[..], || format!("flattening differs at t={t}"))?;
                ensure(z[w..].iter().all(|b| !b), || format!("leakage at t={t}"))?;
                for j in 1..=d {
                    z = ok(flat.evaluate(&z))?;
                    if j < d {
                        let live = j * w..(j + 1) * w;
                        let leak = z.iter().enumerate().any(|(q, &b)| b && !live.contains(&q));
                        ensure(!leak, || format!("intermediate leakage at t={t}, phase {j}"))?;
                    }
                }
            }
        }
        total += 1;
    }
    Ok(format!("{total} circuits, all inputs, t <= 6"))
}

fn amplification() -> Outcome {
    let mut rng = rng(5);
    for k_net in 0..50 {
        let n = 2 * rng.gen_range(1..=4);
        let g = random::odd_degree_graph(&mut rng, n, 0.4);
        let blocks = rng.gen_range(1..=n as u64);
        let src = ok(Network::majority(g, random::scheme(&mut rng, n, blocks)))?;
        let k = rng.gen_range(1..=3);
        let (amp, w) = ok(amplify(&src, k))?;
        // each copy gets up to k adversarial neighbors, redrawn at every step
        let mut b = GraphBuilder::with_vertices(amp.n());
        for (x, y) in amp.graph().edges() {
            b.add_edge(x, y);
        }
        for copy in 0..amp.n() {
            for _ in 0..rng.gen_range(0..=k) {
                let a = b.add_vertex();
                b.add_edge(copy, a);
            }
        }
        let graph = ok(b.build())?;
        let total = graph.n();
        let mut raw = amp.scheme().raw();
        raw.resize(total, amp.scheme().num_blocks() as u64 + 1);
        let net = ok(Network::majority(graph, ok(UpdateScheme::from_raw(&raw))?))?;
        for _ in 0..50 {
            let x = random::bits(&mut rng, n);
            let src_traj = trajectory(&src, &Configuration::from_bits(&x), 20);
            let mut y = w.lift_state(&x);
            y.extend(random::bits(&mut rng, total - amp.n()));
            let mut cfg = Configuration::from_bits(&y);
            for (t, want) in src_traj.iter().enumerate() {
                for v in 0..n {
                    for i in 0..2 * k + 1 {
                        let got = cfg.get(amplified_vertex(v, i, k));
                        ensure(got == want.get(v), || format!("network {k_net}: copy ({v},{i}) wrong at t={t}"))?;
                    }
                }
                cfg = net.global_step(&cfg, t);
                for a in amp.n()..total {
                    cfg.set(a, rng.gen());
                }
            }
        }
    }
    Ok("50 networks x 50 configurations x 20 steps".into())
}

fn cylinder() -> Outcome {
    let mut rng = rng(6);
    let mut worst = 0;
    for k in 0..60 {
        let n = rng.gen_range(1..=6);
        let c = random::depth1_circuit(&mut rng, n, 4, 3);
        let (net, w) = ok(compile_circuit_to_clocked(&c))?;
        let d = net.graph().max_degree();
        ensure(d <= CYLINDER_MAX_DEGREE, || format!("circuit {k}: degree {d}"))?;
        worst = worst.max(d);
        for v in 0..1u64 << n {
            let x = bits_of(v, n);
            let traj = trajectory(&net, &Configuration::from_bits(&w.lift_state(&x)), 24);
            for u in 0..=8 {
                let want = ok(c.iterate(&x, u))?;
                for i in 0..n {
                    let got = traj[3 * u].get(cylinder_input_vertex(n, i));
                    ensure(got == want[i], || format!("circuit {k}, input {v}: coordinate {i} wrong at u={u}"))?;
                }
            }
        }
    }
    Ok(format!("60 circuits, all inputs, u <= 8, max degree {worst}"))
}

fn bseq_pipeline() -> Outcome {
    let mut rng = rng(7);
    let budget = Budget::default();
    let (mut yes, mut worst_degree, mut worst_block, mut worst_blocks) = (0, 0, 0, 0);
    for k in 0..100 {
        let n = rng.gen_range(1..=5);
        let gates = rng.gen_range(1..=12);
        let c = random::iterable_circuit(&mut rng, n, gates);
        let i = rng.gen_range(0..n);
        let mut x = random::bits(&mut rng, n);
        x[i] = false;
        let inst = ok(compile_bseq_instance(&c, &x, i))?;
        let deg = inst.network.graph().max_degree();
        ensure(deg <= 23, || format!("instance {k}: degree {deg}"))?;
        worst_degree = worst_degree.max(deg);
        worst_block = worst_block.max(inst.network.scheme().max_block_size());
        worst_blocks = worst_blocks.max(inst.network.scheme().num_blocks());
        let got = ok(predict_once(&inst.network, &inst.config, inst.target, &budget))?;
        let want = ok(reach_oracle(&c, &x, i, &budget))?;
        ensure(got.answer == want.is_yes(), || format!("instance {k}: network {got}, oracle {want:?}"))?;
        if let Reach::Yes { t } = want {
            yes += 1;
            let at = got.time();
            ensure(at == Some(3 * inst.depth * t), || format!("instance {k}: time {at:?} vs 3*{}*{t}", inst.depth))?;
        }
    }
    Ok(format!(
        "100 instances ({yes} YES), max degree {worst_degree}, max block size {worst_block}, at most {worst_blocks} blocks"
    ))
}

fn structure() -> Outcome {
    let mut rng = rng(8);
    let budget = Budget::default();
    let mut constant: f64 = 0.0;
    for k in 0..200 {
        let n = rng.gen_range(1..=12);
        let g = random::connected_graph(&mut rng, n, 0.3);
        let sync = ok(Network::majority(g.clone(), UpdateScheme::synchronous(n)))?;
        let seq = ok(Network::majority(g, random::sequential_scheme(&mut rng, n)))?;
        for v in 0..1u64 << n {
            let x = Configuration::from_index(v, n);
            let p = ok(find_limit_cycle(&sync, &x, &budget))?.period;
            ensure(p <= 2, || format!("network {k}: synchronous period {p}"))?;
            let p = ok(find_limit_cycle(&seq, &x, &budget))?.period;
            ensure(p == 1, || format!("network {k}: sequential period {p}"))?;
        }
        for net in [&sync, &seq] {
            let tau = ok(transient_length_network(net, &budget))?;
            ensure(tau <= 4 * n * n, || format!("network {k}: transient {tau} > 4n^2"))?;
            constant = constant.max(tau as f64 / (n * n) as f64);
        }
    }
    Ok(format!("200 networks, all configurations, max transient / n^2 = {constant:.3}"))
}

fn portion() -> Outcome {
    let mut rng = rng(9);
    for (a, b) in [(1, 3), (2, 5), (3, 4)] {
        let p = ok(Threshold::new(a, b))?;
        for k in 0..30 {
            let n = rng.gen_range(2..=10);
            let g = random::connected_graph(&mut rng, n, 0.35);
            let blocks = rng.gen_range(1..=n as u64);
            let src = ok(Network::majority(g, random::scheme(&mut rng, n, blocks)))?;
            let (out, w) = ok(to_portion(&src, p))?;
            let originals: Vec<usize> = (0..n).collect();
            for _ in 0..10 {
                let x = random::bits(&mut rng, n);
                let want = trajectory(&src, &Configuration::from_bits(&x), 20);
                let got = trajectory(&out, &Configuration::from_bits(&w.lift_state(&x)), 20);
                for t in 0..=20 {
                    ensure(got[t].restrict(&originals) == want[t], || format!("p={a}/{b} network {k}: t={t}"))?;
                    let moved = (n..out.n()).any(|v| got[t].get(v) != got[0].get(v));
                    ensure(!moved, || format!("p={a}/{b} network {k}: clique changed at t={t}"))?;
                }
            }
        }
    }
    Ok("p in {1/3, 2/5, 3/4}, 30 networks each, 20 steps".into())
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<(Network, Configuration, usize), String> {
    let g = random::connected_graph(rng, n, p);
    let blocks = rng.gen_range(1..=n as u64);
    let net = ok(Network::majority(g, random::scheme(rng, n, blocks)))?;
    let v = rng.gen_range(0..n);
    let mut x = random::bits(rng, n);
    x[v] = false;
    Ok((net, Configuration::from_bits(&x), v))
}

fn reductions() -> Outcome {
    let mut rng = rng(10);
    let budget = Budget::default();
    let (mut yes_a, mut yes_b, mut tried_b) = (0, 0, 0);
    for k in 0..40 {
        let n = rng.gen_range(2..=8);
        let (net, x, v) = random_instance(&mut rng, n, 0.3)?;
        let want = ok(predict_once(&net, &x, v, &budget))?;
        let (out, u, w) = ok(attach_eventual_gadget(&net, v))?;
        let y = Configuration::from_bits(&w.lift_state(&x.to_bits()));
        let got = ok(predict_eventual(&out, &y, u, &budget))?;
        ensure(got.answer == want.answer, || format!("eventual instance {k}: {got} vs {want}"))?;
        yes_a += want.answer as usize;

        let same = ok(predict_conditional(&net, &x, &[], v, &budget))?;
        ensure(same == want, || format!("conditional instance {k}: {same} vs {want}"))?;
    }
    while tried_b < 40 {
        // sparse graphs keep the degree bound and the clique count small
        let n = rng.gen_range(3..=6);
        let (net, x, v) = random_instance(&mut rng, n, 0.2)?;
        let max = net.graph().max_degree().max(3);
        let d = max | 1;
        let want = ok(predict_once(&net, &x, v, &budget))?;
        let (out, w) = ok(build_full_instance(&net, d, v))?;
        let y = Configuration::from_bits(&w.lift_state(&x.to_bits()));
        let got = ok(predict_full(&out, &y, &budget))?;
        ensure(got.answer == want.answer, || format!("full instance {tried_b}: {got} vs {want}"))?;
        yes_b += want.answer as usize;
        tried_b += 1;
    }
    Ok(format!(
        "eventual 40 ({yes_a} YES), full 40 ({yes_b} YES), conditional with no free vertex 40 verbatim"
    ))
}

fn turing_machines() -> Outcome {
    let mut rng = rng(11);
    let (mut halting, mut count) = (0, 0);
    while count < 25 {
        let states = rng.gen_range(2..=4);
        let symbols = rng.gen_range(2..=3);
        let m = random::turing_machine(&mut rng, states, symbols);
        let len = rng.gen_range(1..=4);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..symbols)).collect();
        let (tc, _) = ok(compile_tm(&m, &word, 2, 1_000_000))?;
        let cells = tc.layout.cells;
        let mut cfg = ok(TmConfig::initial(&m, &word, cells))?;
        let mut state = tc.x0.clone();
        ensure(tc.layout.encode(&cfg) == state, || format!("machine {count}: initial encoding differs"))?;
        for t in 1..=25 {
            cfg = cfg.step(&m);
            state = ok(tc.circuit.evaluate(&state))?;
            ensure(tc.layout.encode(&cfg) == state, || format!("machine {count}: step {t} differs"))?;
        }
        // direct reachability: run until the final state or a repeat
        let mut seen = HashSet::new();
        let mut cfg = ok(TmConfig::initial(&m, &word, cells))?;
        let halts = loop {
            if cfg.state == m.final_state() {
                break true;
            }
            if !seen.insert(cfg.clone()) {
                break false;
            }
            cfg = cfg.step(&m);
        };
        let reach = if tc.x0[tc.halt] {
            true
        } else {
            ok(reach_oracle(&tc.circuit, &tc.x0, tc.halt, &Budget::default()))?.is_yes()
        };
        ensure(halts == reach, || format!("machine {count}: halts {halts}, circuit {reach}"))?;
        halting += halts as usize;
        count += 1;
    }
    Ok(format!("{count} machines ({halting} halting), 25 steps each"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("star golden traces", star_dynamics),
        ("clock gadget", clock),
        ("gate networks", gate_networks),
        ("circuit pipeline", circuit_pipeline),
        ("amplification", amplification),
        ("clocked cylinder", cylinder),
        ("iterated circuit pipeline", bseq_pipeline),
        ("period and transient structure", structure),
        ("portion thresholds", portion),
        ("prediction reductions", reductions),
        ("Turing machine front end", turing_machines),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {e} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
