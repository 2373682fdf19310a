//! Driving the command line from code, with a config file and a flag override.

use rpi_meter::cli::run_with;

fn main() {
    let path = std::env::temp_dir().join("rpi-meter-example.conf");
    std::fs::write(&path, "# region\nl=1\ntau=1\n").expect("write config");
    let config = path.to_string_lossy().into_owned();

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        ["rpi-meter", "limit", "--config", &config, "--tau", "137"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");

    let code = run_with(["rpi-meter", "limit", "--l", "-1", "--tau", "1"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
}
