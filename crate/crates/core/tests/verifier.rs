use edgebias::graph::{AttributedGraph, GraphOperator, OperatorKind};
use edgebias::synth::{generate, SbmParams};
use edgebias::verifier::{
    compare_linear_models, ridge_fit, softmax_xent_loss, xent_grad, Lambda, SplitSpec,
};
use ndarray::{Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sbm(p_in: f64, p_out: f64, noise: f64, seed: u64) -> AttributedGraph {
    generate(&SbmParams {
        num_nodes: 1000,
        num_classes: 4,
        class_proportions: None,
        p_in,
        p_out,
        feat_dim: 16,
        separation: 1.0,
        noise,
        seed,
    })
    .unwrap()
}

#[test]
fn ridge_residual_on_random_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = Array2::from_shape_fn((60, 12), |_| rng.random_range(-1.0..1.0));
    let z = Array2::from_shape_fn((60, 3), |_| rng.random_range(0.0..1.0));
    let lambda = 0.1;
    let w = ridge_fit(m.view(), z.view(), lambda).unwrap();
    let mut lhs = m.t().dot(&m).dot(&w);
    lhs.scaled_add(lambda, &w);
    let rhs = m.t().dot(&z);
    let norm = |a: &Array2<f64>| a.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!(norm(&(&lhs - &rhs)) <= 1e-8 * norm(&rhs));
}

#[test]
fn homophilous_sbm_favours_the_graph_model() {
    let g = generate(&SbmParams {
        num_nodes: 400,
        num_classes: 4,
        class_proportions: None,
        p_in: 0.1,
        p_out: 0.0,
        feat_dim: 8,
        separation: 1.0,
        noise: 1.5,
        seed: 1,
    })
    .unwrap();
    let r = compare_linear_models(&g, &SplitSpec::default(), Lambda::Auto, OperatorKind::RenormRwAffinity, 5)
        .unwrap();
    assert!(r.gap > 0.0, "{r:?}");
    assert!(r.acc_graph_aware > 0.9);
}

#[test]
fn heterophilous_noisy_sbm_favours_the_feature_model() {
    let g = sbm(0.002, 0.01, 1.0, 4);
    let r = compare_linear_models(&g, &SplitSpec::default(), Lambda::Auto, OperatorKind::RenormRwAffinity, 10)
        .unwrap();
    assert!(r.gap < 0.0, "{r:?}");
}

#[test]
fn comparison_is_deterministic_and_well_formed() {
    let g = sbm(0.01, 0.005, 1.0, 2);
    let run = || {
        compare_linear_models(&g, &SplitSpec::default(), Lambda::Auto, OperatorKind::RenormSymAffinity, 4)
            .unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a.runs.len(), 4);
    for (i, r) in a.runs.iter().enumerate() {
        assert_eq!(r.seed, 42 + i as u64);
        assert!((0.0..=1.0).contains(&r.acc_graph_aware));
        assert!((0.0..=1.0).contains(&r.acc_graph_agnostic));
        assert_eq!(r.gap, r.acc_graph_aware - r.acc_graph_agnostic);
    }
    let mean = a.runs.iter().map(|r| r.gap).sum::<f64>() / 4.0;
    assert!((a.gap - mean).abs() < 1e-15);
}

#[test]
fn empty_class_is_rejected() {
    let g = AttributedGraph::new(
        6,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        Array2::from_shape_fn((6, 2), |(i, j)| (i * 2 + j) as f64),
        vec![0, 1, 0, 1, 0, 1],
        Some(3),
    )
    .unwrap();
    assert!(compare_linear_models(&g, &SplitSpec::default(), Lambda::Auto, OperatorKind::RenormRwAffinity, 1).is_err());
}

#[test]
fn confident_weights_drive_the_loss_to_zero() {
    let op = GraphOperator::identity(5);
    let labels = [0usize, 2, 1, 1, 0];
    let mut z = Array2::zeros((5, 3));
    for (i, &l) in labels.iter().enumerate() {
        z[[i, l]] = 1.0;
    }
    let mut last = f64::INFINITY;
    for t in [1.0, 5.0, 20.0, 60.0] {
        let w = Array2::<f64>::eye(3) * t;
        let loss = softmax_xent_loss(&op, z.view(), w.view(), z.view()).unwrap();
        assert!(loss.direct < last);
        last = loss.direct;
    }
    assert!(last < 1e-20);
}

#[test]
fn uniform_softmax_gradient_on_regular_graph() {
    // cycle of 12 nodes, balanced labels over 3 classes
    let n = 12;
    let c = 3;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let labels: Vec<usize> = (0..n).map(|i| i % c).collect();
    let g = AttributedGraph::new(n, &edges, Array2::ones((n, 2)), labels, None).unwrap();
    let op = GraphOperator::new(&g, OperatorKind::RenormSymAffinity).unwrap();
    let z = g.one_hot_labels();
    let w = Array2::zeros((2, c));
    let grad = xent_grad(&op, g.features(), w.view(), z.view()).unwrap();
    let a = op.to_dense();
    for j in 0..n {
        for k in 0..c {
            let expect: f64 = -(0..n).map(|i| a[[i, j]] * (z[[i, k]] - 1.0 / c as f64)).sum::<f64>();
            assert!((grad[[j, k]] - expect).abs() < 1e-14);
        }
    }
    // column sums of the gradient vanish because softmax rows sum to one
    for s in grad.sum_axis(Axis(1)) {
        assert!(s.abs() < 1e-14);
    }
}
