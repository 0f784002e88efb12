#include "vp/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vp {

namespace {

constexpr const char* kCsvHeader =
    "t,mass,momentum,ekin,epot,etot,l1,l2,linf,entropy,min_f,max_f,incomp_max,"
    "cpu_seconds,model_mem_bytes";

void write_raw(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), std::streamsize(n));
}

void read_raw(std::istream& in, void* p, std::size_t n) {
    in.read(static_cast<char*>(p), std::streamsize(n));
    if (!in) throw std::runtime_error("io: truncated binary section");
}

void write_i64(std::ostream& out, long long v) {
    const std::int64_t x = v;
    write_raw(out, &x, 8);
}
void write_f64(std::ostream& out, double v) { write_raw(out, &v, 8); }
long long read_i64(std::istream& in) {
    std::int64_t x;
    read_raw(in, &x, 8);
    return x;
}
double read_f64(std::istream& in) {
    double x;
    read_raw(in, &x, 8);
    return x;
}

void write_f64_array(std::ostream& out, const std::vector<double>& a) {
    write_raw(out, a.data(), a.size() * 8);
}
std::vector<double> read_f64_array(std::istream& in, std::size_t n) {
    std::vector<double> a(n);
    read_raw(in, a.data(), n * 8);
    return a;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    return in;
}

} // namespace

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out = open_out(path, std::ios::out | std::ios::trunc);
    out.precision(17);
    out << kCsvHeader << "\n";
    for (const auto& r : records)
        out << r.t << ',' << r.mass << ',' << r.momentum << ',' << r.ekin << ',' << r.epot
            << ',' << r.etot << ',' << r.l1 << ',' << r.l2 << ',' << r.linf << ','
            << r.entropy << ',' << r.min_f << ',' << r.max_f << ',' << r.incomp_max << ','
            << r.cpu_seconds << ',' << r.model_mem_bytes << "\n";
    if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path) {
    std::ifstream in = open_in(path, std::ios::in);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("io: '" + path + "' is not a diagnostics table");
    std::vector<DiagnosticsRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double v[15];
        char comma;
        for (int i = 0; i < 15; ++i) {
            if (i > 0 && (!(row >> comma) || comma != ','))
                throw std::runtime_error("io: malformed diagnostics row in '" + path + "'");
            if (!(row >> v[i]))
                throw std::runtime_error("io: malformed diagnostics row in '" + path + "'");
        }
        DiagnosticsRecord r;
        r.t = v[0]; r.mass = v[1]; r.momentum = v[2]; r.ekin = v[3]; r.epot = v[4];
        r.etot = v[5]; r.l1 = v[6]; r.l2 = v[7]; r.linf = v[8]; r.entropy = v[9];
        r.min_f = v[10]; r.max_f = v[11]; r.incomp_max = v[12]; r.cpu_seconds = v[13];
        r.model_mem_bytes = v[14];
        records.push_back(r);
    }
    return records;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
    if (snap.f.size() != snap.grid.size())
        throw std::invalid_argument("write_snapshot: sample count mismatch");
    std::ofstream out = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    write_i64(out, snap.step);
    write_f64(out, snap.time);
    write_i64(out, snap.grid.Nx);
    write_i64(out, snap.grid.Nv);
    write_f64(out, snap.grid.Lx);
    write_f64(out, snap.grid.Lv);
    write_f64_array(out, snap.f);
    if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
    Snapshot snap;
    snap.step = read_i64(in);
    snap.time = read_f64(in);
    const long long Nx = read_i64(in);
    const long long Nv = read_i64(in);
    const double Lx = read_f64(in);
    const double Lv = read_f64(in);
    snap.grid = PhaseGrid(Lx, Lv, int(Nx), int(Nv));
    snap.f = read_f64_array(in, snap.grid.size());
    return snap;
}

void write_submap(const std::string& path, const SubMap& map, long long creation_step,
                  double tau) {
    std::ofstream out = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    const PhaseGrid& g = map.grid();
    write_i64(out, g.Nx);
    write_i64(out, g.Nv);
    write_f64(out, g.Lx);
    write_f64(out, g.Lv);
    write_i64(out, creation_step);
    write_f64(out, tau);
    write_f64(out, map.drift_dt());
    write_f64_array(out, map.delta_x());
    write_f64_array(out, map.delta_v());
    if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

SubMap read_submap(const std::string& path, Scheme scheme, int degree,
                   long long* creation_step, double* tau) {
    std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
    const long long Nx = read_i64(in);
    const long long Nv = read_i64(in);
    const double Lx = read_f64(in);
    const double Lv = read_f64(in);
    const long long cstep = read_i64(in);
    const double t = read_f64(in);
    const double drift = read_f64(in);
    PhaseGrid grid(Lx, Lv, int(Nx), int(Nv));
    std::vector<double> dx = read_f64_array(in, grid.size());
    std::vector<double> dv = read_f64_array(in, grid.size());
    if (creation_step) *creation_step = cstep;
    if (tau) *tau = t;
    return SubMap(grid, drift, std::move(dx), std::move(dv), scheme, degree);
}

void write_run_state(const std::string& path, const RunConfig& cfg, const SimState& state) {
    const std::string cfg_text = serialize_config(cfg);
    std::ofstream out = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    out << "VPSTATE1\n";
    out << "config_bytes = " << cfg_text.size() << "\n";
    out << "t_index = " << state.t_index() << "\n";
    out << "N = " << state.N() << "\n";
    out << "history_base = " << state.history().base() << "\n";
    out << "history_count = " << state.history().size() << "\n";
    out << "stack_count = " << state.stack().size() << "\n";
    out << "\n";
    out << cfg_text;

    const FieldHistory& hist = state.history();
    for (int n = hist.base(); n <= hist.last_index(); ++n)
        write_f64_array(out, hist.field(n));

    for (std::size_t m = 0; m < state.stack().size(); ++m) {
        const SubMap& map = state.stack().map(m);
        const PhaseGrid& g = map.grid();
        write_i64(out, g.Nx);
        write_i64(out, g.Nv);
        write_f64(out, g.Lx);
        write_f64(out, g.Lv);
        write_f64(out, map.drift_dt());
        write_f64_array(out, map.delta_x());
        write_f64_array(out, map.delta_v());
    }
    if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

LoadedState read_run_state(const std::string& path) {
    std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
    std::string line;
    if (!std::getline(in, line) || line != "VPSTATE1")
        throw std::runtime_error("io: '" + path + "' is not a run-state archive");

    auto header_int = [&](const std::string& key) -> long long {
        if (!std::getline(in, line))
            throw std::runtime_error("io: truncated state manifest in '" + path + "'");
        std::istringstream row(line);
        std::string k, eq;
        long long v;
        if (!(row >> k >> eq >> v) || k != key || eq != "=")
            throw std::runtime_error("io: bad manifest line '" + line + "' in '" + path +
                                     "' (expected " + key + ")");
        return v;
    };

    const long long config_bytes = header_int("config_bytes");
    const long long t_index = header_int("t_index");
    const long long N = header_int("N");
    const long long history_base = header_int("history_base");
    const long long history_count = header_int("history_count");
    const long long stack_count = header_int("stack_count");
    if (!std::getline(in, line) || !line.empty())
        throw std::runtime_error("io: manifest must end with a blank line in '" + path + "'");

    std::string cfg_text(std::size_t(config_bytes), '\0');
    read_raw(in, cfg_text.data(), cfg_text.size());
    RunConfig cfg = parse_config_text(cfg_text, path + ":embedded-config");

    std::vector<std::vector<double>> fields;
    fields.reserve(std::size_t(history_count));
    for (long long n = 0; n < history_count; ++n)
        fields.push_back(read_f64_array(in, std::size_t(cfg.N_f)));

    MapStack stack;
    for (long long m = 0; m < stack_count; ++m) {
        const long long Nx = read_i64(in);
        const long long Nv = read_i64(in);
        const double Lx = read_f64(in);
        const double Lv = read_f64(in);
        const double drift = read_f64(in);
        PhaseGrid grid(Lx, Lv, int(Nx), int(Nv));
        std::vector<double> dx = read_f64_array(in, grid.size());
        std::vector<double> dv = read_f64_array(in, grid.size());
        stack.push(SubMap(grid, drift, std::move(dx), std::move(dv), cfg.map_scheme,
                          cfg.map_degree));
    }

    SimState state = restore_run_state(cfg.stepper(), int(t_index), int(N), std::move(stack),
                                       int(history_base), std::move(fields));
    return LoadedState{std::move(cfg), std::move(state)};
}

} // namespace vp
