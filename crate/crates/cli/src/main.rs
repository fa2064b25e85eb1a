use std::io::Write;

fn main() {
    let report = hamvol_cli::run(std::env::args_os());
    let out = report.render();
    if report.exit_code == hamvol_cli::EXIT_ERROR && !report.json {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    let _ = std::io::stdout().flush();
    std::process::exit(report.exit_code);
}
