use chpp_core::chm::{f4_family, fourier, sylvester_hadamard};
use chpp_core::config::{RunConfig, Tolerances};
use chpp_core::gate::{random_state, random_unitary, GateSet, QuditGate};
use chpp_core::promise::{build_instance, build_minimal_instance, shift_permutations, verify_promise, MinimalFree, Target, Verdict};
use chpp_core::switch::{run_protocol, sweep_columns, trace_protocol, JointState, TargetState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn outcome_is_independent_of_the_target_state() {
    let cfg = RunConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in 2..=5 {
        let m = fourier(d).unwrap();
        for k in 0..d {
            let inst = build_instance(&m, k, Target::Qudit { dim: None }, &cfg).unwrap();
            for _ in 0..20 {
                let psi = TargetState::Qudit(random_state(d, &mut rng));
                let trace = trace_protocol(&m, inst.perm_set(), inst.gates(), &psi, &cfg.tolerances).unwrap();
                for stage in &trace.stages {
                    assert!((stage.norm() - 1.0).abs() < 1e-12);
                }
                assert_eq!(trace.outcome.argmax, k);
                assert!(trace.outcome.deterministic);
                assert!(1.0 - trace.outcome.distribution[k] < 1e-9);
            }
        }
    }
}

#[test]
fn promise_and_protocol_agree() {
    let cfg = RunConfig::default();
    let cases = [
        (fourier(4).unwrap(), Target::Qudit { dim: Some(8) }),
        (sylvester_hadamard(2).unwrap(), Target::Qudit { dim: None }),
        (f4_family(0.77).unwrap(), Target::Cv { alpha: 1.0 }),
    ];
    for (m, target) in cases {
        for k in 0..m.p() {
            let inst = build_instance(&m, k, target, &cfg).unwrap();
            let Verdict::Column(col) = verify_promise(&inst, 1e-9).unwrap() else { panic!() };
            let psi = match inst.gates() {
                GateSet::Qudit(g) => TargetState::basis(g[0].dim()),
                GateSet::Weyl(_) => TargetState::Vacuum,
            };
            let out = run_protocol(&m, inst.perm_set(), inst.gates(), &psi, &cfg.tolerances).unwrap();
            assert_eq!(out.argmax, col);
        }
    }
    let inst = build_minimal_instance(0.77, 2, MinimalFree::default(), &cfg).unwrap();
    let out = run_protocol(inst.matrix(), inst.perm_set(), inst.gates(), &TargetState::Vacuum, &cfg.tolerances)
        .unwrap();
    assert_eq!(out.argmax, 2);
    assert!(1.0 - out.distribution[2] < 1e-9);
}

#[test]
fn random_gates_are_not_deterministic() {
    let tol = Tolerances::default();
    let m = fourier(3).unwrap();
    let perms = shift_permutations(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let gates = GateSet::Qudit((0..3).map(|_| random_unitary(3, &mut rng)).collect());
        let psi = TargetState::Qudit(random_state(3, &mut rng));
        let out = run_protocol(&m, &perms, &gates, &psi, &tol).unwrap();
        assert!(!out.deterministic);
        assert!((out.distribution.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn identity_gates_give_column_zero() {
    let tol = Tolerances::default();
    for d in 2..=6 {
        let m = fourier(d).unwrap();
        let perms = shift_permutations(d, d).unwrap();
        let gates = GateSet::Qudit(vec![QuditGate::identity(3); d]);
        let out = run_protocol(&m, &perms, &gates, &TargetState::basis(3), &tol).unwrap();
        assert_eq!(out.argmax, 0);
        assert!(out.deterministic);
    }
}

#[test]
#[allow(clippy::approx_constant)] // the truncated value is deliberate
fn sweeps_recover_every_column() {
    let cfg = RunConfig::default();
    for d in 2..=6 {
        let r = sweep_columns(&fourier(d).unwrap(), Target::Qudit { dim: None }, &cfg).unwrap();
        assert!(r.all_recovered && r.worst_deviation < 1e-9);
    }
    for a in [0.0, std::f64::consts::PI / 7.0, 1.5707963, 2.0] {
        let r = sweep_columns(&f4_family(a).unwrap(), Target::Cv { alpha: 1.0 }, &cfg).unwrap();
        assert!(r.all_recovered && r.worst_deviation < 1e-9);
    }
}

#[test]
fn cv_branches_share_displacement_after_the_switch() {
    let cfg = RunConfig::default();
    let m = fourier(5).unwrap();
    let inst = build_instance(&m, 3, Target::Cv { alpha: 0.4 }, &cfg).unwrap();
    let trace = trace_protocol(&m, inst.perm_set(), inst.gates(), &TargetState::Vacuum, &cfg.tolerances).unwrap();
    let JointState::Cv { branches } = &trace.stages[2] else { panic!() };
    let first = branches[0].1;
    assert!(branches.iter().all(|(_, w)| w.same_displacement(&first, 1e-12)));
}
