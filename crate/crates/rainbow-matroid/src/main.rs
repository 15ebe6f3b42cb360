fn main() {
    // Die quietly when stdout closes early (`rainbow-matroid ... | head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(rainbow_matroid::cli::run());
}
