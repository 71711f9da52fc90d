use qdcool::cooling::*;
use qdcool::models::*;
use qdcool::qcore::*;
use std::f64::consts::PI;
fn pfinal(n: [f64; 3], seq: &str, eps_scale: f64, evo_trot: bool) -> f64 {
    let h = build_random_axis(RandomAxisParams { h: 1.0, axis: n }).unwrap();
    let mut sim = StepSimulator::new(h).unwrap();
    let eps = 2.0 * eps_scale;
    let gamma = PI * eps / 10.0;
    let evo = if evo_trot { Evolution::Trotter(weak_coupling_trotter_number(eps, gamma)) } else { Evolution::Exact };
    let excited = sim.spectrum().eigenvectors().column(1).into_owned();
    let mut rho = DensityMatrix::pure(&excited).unwrap();
    let p0 = sim.spectrum().ground_manifold_projector(1e-9);
    for c in seq.chars() {
        let p = CoolingStepParams::new(eps, gamma, evo, CouplingDescriptor::new(PauliAxis::from_char(c).unwrap(), 0)).unwrap();
        rho = sim.step(&rho, &p).unwrap();
    }
    fidelity(&rho, &p0).unwrap()
}
fn main() {
    let mut worst = (1.0, [0.0; 3]);
    let m = 200;
    for i in 0..=m { for j in 0..2*m {
        let th = PI * i as f64 / m as f64; let ph = PI * j as f64 / m as f64;
        let n = [th.sin()*ph.cos(), th.sin()*ph.sin(), th.cos()];
        let p = pfinal(n, "XYZ", 1.0, false);
        if p < worst.0 { worst = (p, n); }
    }}
    println!("fine XYZ worst {:.5} at {:?}", worst.0, worst.1);
    for s in [0.98, 1.0, 1.02] {
        println!("eps scale {s}: worst-point p {:.5}", pfinal(worst.1, "XYZ", s, false));
    }
    let n = 8;
    let h = build_tfim(tfim_from_ratio(n, 1.0).unwrap()).unwrap();
    let c = CouplingDescriptor::new(PauliAxis::Y, 2);
    let mut sim = StepSimulator::new(h.clone()).unwrap();
    let rho = DensityMatrix::maximally_mixed(1 << n);
    let e0 = expectation(&rho, &h).unwrap();
    for k in 0..16 {
        let eps = 2.5 + 0.06 * k as f64;
        let de = |p: CoolingStepParams| expectation(&sim.clone().step(&rho, &p).unwrap(), &h).unwrap() - e0;
        let bb = de(CoolingStepParams::bangbang(eps, c).unwrap());
        let sc = de(CoolingStepParams::new(eps, strong_coupling_gamma(eps), Evolution::Exact, c).unwrap());
        println!("eps {eps:.3} bb {bb:.5} strong-exact {sc:.5}");
    }
    let _ = &mut sim;
}
