#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "hyperheat/cli.hpp"

using namespace hyperheat;

namespace {

struct Common {
    int n = 256;
    double omega = 4.0;
    double omega_prime = 3.0;
    std::string g = "gaussian:1,1";
    std::string times = "0.5";
    std::string xs = "-2:2:41";
    std::string out;
    int threads = 0;
};

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("HYPERHEAT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
        throw ConfigError("HYPERHEAT_THREADS must be a positive integer");
    }
    return 1;
}

BoundaryCondition load_boundary(const std::string& text) {
    if (text.rfind("file:", 0) == 0) return BoundaryCondition::load_samples(text.substr(5));
    return BoundaryCondition::parse(text);
}

SolveConfig make_config(const Common& c) {
    SolveConfig config;
    config.n = c.n;
    config.omega = c.omega;
    config.omega_prime = c.omega_prime;
    config.boundary = load_boundary(c.g);
    config.times = cli::parse_number_list(c.times);
    config.xs = cli::parse_number_list(c.xs);
    config.threads = resolve_threads(c.threads);
    return config;
}

/// stdout unless --out names a file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ConfigError("cannot open output file " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void add_solve_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--n", c.n, "grid parameter")->capture_default_str();
    cmd->add_option("--omega", c.omega, "boundary data kept on [-omega, omega)")->capture_default_str();
    cmd->add_option("--omega-prime", c.omega_prime, "frequency window radius")->capture_default_str();
    cmd->add_option("--g", c.g, "gaussian:a,b | indicator:l,r | bump:c,w | zero | file:PATH (x,re,im lines)")
        ->capture_default_str();
    cmd->add_option("--times", c.times, "query times: list or first:last:count")->capture_default_str();
    cmd->add_option("--xs", c.xs, "query positions: list or first:last:count")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral heat-equation solver on a finite grid"};
    app.require_subcommand(1);

    Common c;
    std::uint64_t seed = 42;
    int max_n = 8;
    std::string n_list = "128,256,512";

    auto* validate = app.add_subcommand("validate", "check the exact discrete identities");
    validate->add_option("--seed", seed, "random slice seed")->capture_default_str();
    validate->add_option("--max-n", max_n, "largest grid, at most 16")->capture_default_str();

    auto* solve_cmd = app.add_subcommand("solve", "windowed spectral solve at (t, x) points");
    add_solve_flags(solve_cmd, c);

    auto* kernel_cmd = app.add_subcommand("kernel", "discrete heat kernel at offsets --xs");
    add_solve_flags(kernel_cmd, c);

    auto* converge_cmd = app.add_subcommand("converge", "max error against the closed form across --n-list");
    add_solve_flags(converge_cmd, c);
    converge_cmd->add_option("--n-list", n_list, "grid parameters to sweep, at least three")->capture_default_str();

    auto* rates = app.add_subcommand("rates", "rate and bound checks for the limiting sequences");

    for (auto* cmd : {validate, solve_cmd, kernel_cmd, converge_cmd, rates}) {
        cmd->add_option("--out", c.out, "CSV path (default stdout)");
        cmd->add_option("--threads", c.threads, "worker threads (fallback HYPERHEAT_THREADS, else 1)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kConfigError;
    }

    return cli::guarded(
        [&] {
            Output out(c.out);
            auto& csv = out.stream();
            if (*validate) {
                cli::ValidateOptions options;
                options.seed = seed;
                options.max_n = max_n;
                return cli::run_validate(options, csv, std::cerr);
            }
            if (*rates) return cli::run_rates(csv, std::cerr);
            const auto config = make_config(c);
            if (*solve_cmd) return cli::run_solve(config, csv, std::cerr);
            if (*kernel_cmd) return cli::run_kernel(config, csv, std::cerr);
            const auto ns = cli::parse_int_list(n_list);
            return cli::run_converge(config, ns, csv, std::cerr);
        },
        std::cerr);
}
