fn main() {
    // Die quietly when the reader closes the pipe, like other line tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(complin::run())
}
