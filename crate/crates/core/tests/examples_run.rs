#[path = "../examples/cohomology_ring.rs"]
mod cohomology_ring;
#[path = "../examples/flat_frame.rs"]
mod flat_frame;
#[path = "../examples/gauss_manin.rs"]
mod gauss_manin;
#[path = "../examples/good_basis.rs"]
mod good_basis;
#[path = "../examples/mirror_map.rs"]
mod mirror_map;
#[path = "../examples/period_map.rs"]
mod period_map;
#[path = "../examples/validate_fan.rs"]
mod validate_fan;

#[test]
fn examples_run() {
    validate_fan::run_example().unwrap();
    good_basis::run_example().unwrap();
    cohomology_ring::run_example().unwrap();
    gauss_manin::run_example().unwrap();
    flat_frame::run_example().unwrap();
    period_map::run_example().unwrap();
    mirror_map::run_example().unwrap();
}
