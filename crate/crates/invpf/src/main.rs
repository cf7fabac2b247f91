//! `invpf` command-line tool; see [`invpf::cli`].

fn main() {
    let code = invpf::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
