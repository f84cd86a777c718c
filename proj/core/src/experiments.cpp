#include "qnmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "qnmlab/constants.hpp"
#include "qnmlab/errors.hpp"
#include "qnmlab/fdfd.hpp"
#include "qnmlab/mie.hpp"
#include "qnmlab/norms.hpp"
#include "qnmlab/slab.hpp"

namespace qnmlab {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the caller thread; results must be written to
// preallocated, index-addressed storage so the output order never
// depends on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

const char* class_name(ModeClass c) {
    switch (c) {
        case ModeClass::QNM: return "qnm";
        case ModeClass::Numerical: return "numerical";
        case ModeClass::Unphysical: return "unphysical";
        case ModeClass::Unclassified: return "unclassified";
    }
    return "?";
}

std::vector<std::string> split_names(const std::string& raw) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

NormMethod method_from_name(const std::string& s) {
    for (NormMethod m : {NormMethod::LK, NormMethod::M_exact, NormMethod::M_fd,
                         NormMethod::PML, NormMethod::PoleResponse})
        if (s == norm_method_name(m)) return m;
    throw ConfigError("[methods] list: unknown method '" + s +
                      "' (expected LK, M_exact, M_fd, PML or PoleResponse)");
}

// Shared by sphere-norms and invariance: material, radius and the l = 1
// TM mode found from a wavelength guess.
struct SphereSetup {
    SphereGeometry geom;
    MieMode mode;
};

SphereSetup sphere_setup(const Config& cfg) {
    const Material inside = cfg.material(cfg.get_string("sphere", "material"));
    SphereGeometry geom{cfg.get_double("sphere", "radius_nm") * 1e-9, inside,
                        Material::vacuum()};
    const double bg = cfg.get_double("sphere", "background_eps_re", 1.0);
    if (bg != 1.0) geom.exterior = Material::nondispersive(bg);
    const double lambda = cfg.get_double("sphere", "lambda_guess_nm") * 1e-9;
    const std::vector<cplx> seeds = mie_scan_minima(geom, 1, MiePol::TM, lambda);
    if (seeds.empty())
        throw NoConvergence("no Mie resonance near the wavelength guess");
    return {geom, find_mie_qnm(geom, 1, MiePol::TM, seeds.front())};
}

std::vector<double> radius_sweep(const Config& cfg) {
    if (cfg.has_key("sweep", "r_values_nm")) {
        std::vector<double> r = cfg.get_double_list("sweep", "r_values_nm");
        for (double& v : r) v *= 1e-9;
        return r;
    }
    const double lo = cfg.get_double("sweep", "r_min_nm") * 1e-9;
    const double hi = cfg.get_double("sweep", "r_max_nm") * 1e-9;
    const int n = cfg.get_int("sweep", "points");
    if (n < 2 || lo <= 0 || hi <= lo)
        throw ConfigError("[sweep]: need points >= 2 and 0 < r_min < r_max");
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return r;
}

PmlMap pml_map(const Config& cfg, double R) {
    PmlMap map;
    map.R = R;
    map.alpha = cplx(cfg.get_double("pml", "alpha_re", 1.0),
                     cfg.get_double("pml", "alpha_im", 0.5));
    map.T = cfg.get_double("pml", "thickness_um", 4.0) * 1e-6;
    return map;
}

ExperimentResult sphere_norms(const Config& cfg, int threads) {
    const SphereSetup s = sphere_setup(cfg);
    const std::vector<double> radii = radius_sweep(cfg);
    std::vector<NormMethod> methods;
    for (const std::string& name : split_names(
             cfg.get_string("methods", "list", "PML,M_exact,LK")))
        methods.push_back(method_from_name(name));
    if (methods.empty()) throw ConfigError("[methods] list: empty");
    const double pole_r_src = cfg.get_double("methods", "pole_r_src_nm", 0.0);
    cfg.reject_unknown();

    // PML reference first (one value, R-independent), then the sweep.
    MieMode mode = s.mode;
    const cplx ref = pml_norm(mode, s.geom, pml_map(cfg, 1.5 * s.geom.a)).value;

    const int n = static_cast<int>(radii.size());
    std::vector<std::vector<NormResult>> per_radius(n);
    parallel_for(n, threads, [&](int i) {
        per_radius[i] = norm_sweep(mode, s.geom, {radii[i]}, methods);
    });

    ExperimentResult res;
    res.experiment = "sphere-norms";
    CsvTable table(
        {"R_nm", "method", "re_norm", "im_norm", "rel_err_vs_pml"});
    for (int i = 0; i < n; ++i)
        for (const NormResult& r : per_radius[i]) {
            if (auto it = r.meta.find("error"); it != r.meta.end())
                res.warnings.push_back(std::string(norm_method_name(r.method)) +
                                       " at R = " + csv_double(radii[i] * 1e9) +
                                       " nm: " + it->second);
            table.add_row({csv_double(radii[i] * 1e9),
                           norm_method_name(r.method),
                           csv_double(r.value.real()),
                           csv_double(r.value.imag()),
                           csv_double(std::abs(r.value - ref) / std::abs(ref))});
        }
    if (pole_r_src > 0) {
        const NormResult pr =
            pole_response_norm_sphere(mode, s.geom, pole_r_src * 1e-9);
        table.add_row({csv_double(pole_r_src),
                       norm_method_name(NormMethod::PoleResponse),
                       csv_double(pr.value.real()), csv_double(pr.value.imag()),
                       csv_double(std::abs(pr.value - ref) / std::abs(ref))});
    }
    res.outputs.push_back({"sphere_norms.csv", std::move(table)});
    return res;
}

ExperimentResult invariance(const Config& cfg, int threads) {
    const SphereSetup s = sphere_setup(cfg);
    const std::vector<double> radii = radius_sweep(cfg);
    const double alpha_re = cfg.get_double("pml", "alpha_re", 1.0);
    const std::vector<double> alpha_ims =
        cfg.get_double_list("pml", "alpha_im_values");
    const double T = cfg.get_double("pml", "thickness_um", 4.0) * 1e-6;
    cfg.reject_unknown();

    const int n = static_cast<int>(radii.size() * alpha_ims.size());
    std::vector<cplx> values(n);
    parallel_for(n, threads, [&](int i) {
        const int ir = i / static_cast<int>(alpha_ims.size());
        const int ia = i % static_cast<int>(alpha_ims.size());
        MieMode mode = s.mode;
        PmlMap map{radii[ir], cplx(alpha_re, alpha_ims[ia]), T};
        values[i] = pml_norm(mode, s.geom, map).value;
    });

    cplx mean = 0.0;
    for (const cplx& v : values) mean += v;
    mean /= double(n);

    ExperimentResult res;
    res.experiment = "invariance";
    CsvTable table(
        {"R_nm", "alpha_re", "alpha_im", "re_norm", "im_norm", "rel_dev"});
    for (int i = 0; i < n; ++i) {
        const int ir = i / static_cast<int>(alpha_ims.size());
        const int ia = i % static_cast<int>(alpha_ims.size());
        table.add_row({csv_double(radii[ir] * 1e9), csv_double(alpha_re),
                       csv_double(alpha_ims[ia]), csv_double(values[i].real()),
                       csv_double(values[i].imag()),
                       csv_double(std::abs(values[i] - mean) / std::abs(mean))});
    }
    res.outputs.push_back({"invariance.csv", std::move(table)});
    return res;
}

SlabGeometry slab_geometry(const Config& cfg) {
    return {cfg.get_double("slab", "n"),
            cfg.get_double("slab", "L_nm") * 1e-9};
}

ExperimentResult slab_complete(const Config& cfg, int threads) {
    const SlabGeometry geom = slab_geometry(cfg);
    const double x_src = cfg.get_double("source", "x_src_nm") * 1e-9;
    const double omega = cfg.get_double("source", "omega_rad_per_s");
    std::vector<double> xs = cfg.get_double_list("eval", "x_values_nm");
    for (double& x : xs) x *= 1e-9;
    const std::vector<int> m_values = cfg.get_int_list("sweep", "m_values");
    cfg.reject_unknown();

    struct Row {
        int M;
        double x, err;
        bool outside;
    };
    const int n = static_cast<int>(m_values.size() * xs.size());
    std::vector<Row> rows(n);
    parallel_for(n, threads, [&](int i) {
        const int im = i / static_cast<int>(xs.size());
        const int ix = i % static_cast<int>(xs.size());
        const double x = xs[ix];
        bool outside = false;
        const cplx approx =
            slab_green_expansion(geom, x, x_src, omega, m_values[im], &outside);
        const cplx exact = slab_driven_field(geom, x, x_src, omega);
        rows[i] = {m_values[im], x, std::abs(approx - exact), outside};
    });

    ExperimentResult res;
    res.experiment = "slab-complete";
    CsvTable table({"M", "x_nm", "abs_err"});
    bool warned = false;
    for (const Row& r : rows) {
        table.add_row({std::to_string(r.M), csv_double(r.x * 1e9),
                       csv_double(r.err)});
        if (r.outside && !warned) {
            res.warnings.push_back(
                "some evaluation points lie outside the slab, where the pole "
                "expansion is not expected to converge");
            warned = true;
        }
    }
    res.outputs.push_back({"slab_complete.csv", std::move(table)});
    return res;
}

// Shared FDFD setup: geometry, grid and PML from the config. The slab is
// dispersive when [slab] names a material, nondispersive when it gives a
// refractive index directly.
struct FdfdSetup {
    Grid1D grid;
    PmlProfile1D pml;
    Assembled sys;
    std::function<Assembled(const PmlProfile1D&)> reassemble;
};

FdfdSetup fdfd_setup(const Config& cfg) {
    Grid1D grid{cfg.get_double("grid", "x_min_um") * 1e-6,
                cfg.get_double("grid", "x_max_um") * 1e-6,
                cfg.get_int("grid", "cells")};
    PmlProfile1D pml;
    pml.thickness = cfg.get_double("pml", "thickness_um") * 1e-6;
    pml.stretch = cplx(cfg.get_double("pml", "stretch_re"),
                       cfg.get_double("pml", "stretch_im"));
    pml.grade = cfg.get_int("pml", "grade", 0);
    if (cfg.has_key("slab", "material")) {
        LorentzSlab slab{cfg.get_double("slab", "L_nm") * 1e-9,
                         cfg.material(cfg.get_string("slab", "material"))};
        auto re = [slab, grid](const PmlProfile1D& p) {
            return assemble(slab, grid, p);
        };
        return {grid, pml, re(pml), re};
    }
    const SlabGeometry geom = slab_geometry(cfg);
    auto re = [geom, grid](const PmlProfile1D& p) {
        return assemble(geom, grid, p);
    };
    return {grid, pml, re(pml), re};
}

std::vector<cplx> sheet_current(const Config& cfg, const Grid1D& grid) {
    const double x_src = cfg.get_double("source", "x_src_nm") * 1e-9;
    const double amp = cfg.get_double("source", "amplitude", 1.0);
    std::vector<cplx> current(grid.N - 1, 0.0);
    int best = 0;
    for (int i = 1; i < grid.N - 1; ++i)
        if (std::abs(grid.e_node(i) - x_src) <
            std::abs(grid.e_node(best) - x_src))
            best = i;
    current[best] = amp / grid.dx(); // unit-strength sheet
    return current;
}

ExperimentResult fdfd_spectrum(const Config& cfg, int) {
    const FdfdSetup f = fdfd_setup(cfg);
    const double scale = cfg.get_double("classify", "stretch_scale", 1.25);
    const double tol = cfg.get_double("classify", "tol", 1e-6);
    const std::vector<cplx> current = sheet_current(cfg, f.grid);
    const cplx omega = cfg.get_double("source", "omega_rad_per_s");
    cfg.reject_unknown();

    std::vector<DiscreteEigenMode> modes = eigensolve(f.sys);
    PmlProfile1D alt = f.pml;
    alt.stretch *= scale;
    const std::vector<DiscreteEigenMode> other =
        eigensolve(f.reassemble(alt), EigenContent::ValuesOnly);
    classify_modes(modes, other, tol);

    Reconstruction rec =
        excitation_and_reconstruct(modes, f.sys, current, omega);

    struct Row {
        cplx w;
        ModeClass c;
        double alpha;
    };
    std::vector<Row> rows(modes.size());
    for (size_t m = 0; m < modes.size(); ++m)
        rows[m] = {modes[m].omega_t, modes[m].classification,
                   std::abs(rec.alphas[m])};
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
        return a.w.imag() < b.w.imag();
    });

    ExperimentResult res;
    res.experiment = "fdfd-spectrum";
    CsvTable table({"re_omega", "im_omega", "class", "alpha_abs"});
    for (const Row& r : rows)
        table.add_row({csv_double(r.w.real()), csv_double(r.w.imag()),
                       class_name(r.c), csv_double(r.alpha)});
    res.outputs.push_back({"fdfd_spectrum.csv", std::move(table)});
    return res;
}

ExperimentResult fdfd_reconstruct(const Config& cfg, int) {
    const FdfdSetup f = fdfd_setup(cfg);
    const double scale = cfg.get_double("classify", "stretch_scale", 1.25);
    const double tol = cfg.get_double("classify", "tol", 1e-6);
    const std::vector<cplx> current = sheet_current(cfg, f.grid);
    const std::vector<double> omegas =
        cfg.get_double_list("sweep", "omega_values_rad_per_s");
    cfg.reject_unknown();

    std::vector<DiscreteEigenMode> modes = eigensolve(f.sys);
    PmlProfile1D alt = f.pml;
    alt.stretch *= scale;
    const std::vector<DiscreteEigenMode> other =
        eigensolve(f.reassemble(alt), EigenContent::ValuesOnly);
    classify_modes(modes, other, tol);
    std::vector<DiscreteEigenMode> qnm_only;
    for (const auto& m : modes)
        if (m.classification == ModeClass::QNM) qnm_only.push_back(m);

    ExperimentResult res;
    res.experiment = "fdfd-reconstruct";
    CsvTable table({"omega_rad_per_s", "basis", "n_modes", "err_vs_direct"});
    for (double w : omegas) {
        const Reconstruction full =
            excitation_and_reconstruct(modes, f.sys, current, w);
        const Reconstruction qnm =
            excitation_and_reconstruct(qnm_only, f.sys, current, w);
        table.add_row({csv_double(w), "full", std::to_string(modes.size()),
                       csv_double(full.error_vs_direct)});
        table.add_row({csv_double(w), "qnm", std::to_string(qnm_only.size()),
                       csv_double(qnm.error_vs_direct)});
    }
    res.outputs.push_back({"fdfd_reconstruct.csv", std::move(table)});
    return res;
}

ExperimentResult revelation_exp(const Config& cfg, int) {
    const SlabGeometry geom = slab_geometry(cfg);
    Grid1D grid{cfg.get_double("grid", "x_min_um") * 1e-6,
                cfg.get_double("grid", "x_max_um") * 1e-6,
                cfg.get_int("grid", "cells")};
    PmlProfile1D pml;
    pml.thickness = cfg.get_double("pml", "thickness_um") * 1e-6;
    pml.stretch = cfg.get_double("pml", "scale");
    pml.grade = cfg.get_int("pml", "grade", 0);
    std::vector<double> tans = cfg.get_double_list("sweep", "tan_theta_values");
    const int m_max = cfg.get_int("sweep", "m_max");
    const double match_tol = cfg.get_double("sweep", "match_tol", 2e-2);
    cfg.reject_unknown();

    std::vector<double> thetas;
    for (double t : tans) thetas.push_back(std::atan(t));
    const std::vector<RevelationRow> study =
        revelation_study(geom, grid, pml, thetas, m_max, match_tol);
    const std::vector<SlabMode> ladder = slab_qnm_frequencies(geom, m_max);

    ExperimentResult res;
    res.experiment = "revelation";
    CsvTable table({"tan_theta", "m", "q", "predicted", "revealed", "re_omega",
                    "im_omega"});
    for (size_t it = 0; it < study.size(); ++it) {
        const RevelationRow& row = study[it];
        for (int m = 1; m <= m_max; ++m) {
            const double q = quality_factor(ladder[m - 1].omega_t);
            const bool predicted = tans[it] > 1.0 / (2.0 * q);
            const auto pos =
                std::find(row.revealed.begin(), row.revealed.end(), m);
            const bool revealed = pos != row.revealed.end();
            cplx w(std::nan(""), std::nan(""));
            if (revealed) w = row.eigenvalues[pos - row.revealed.begin()];
            if (predicted != revealed)
                res.warnings.push_back(
                    "tan_theta = " + csv_double(tans[it]) + ", m = " +
                    std::to_string(m) + ": revelation differs from the 1/(2Q) "
                    "predicate (finite-layer boundary case)");
            table.add_row({csv_double(tans[it]), std::to_string(m),
                           csv_double(q), predicted ? "1" : "0",
                           revealed ? "1" : "0", csv_double(w.real()),
                           csv_double(w.imag())});
        }
    }
    res.outputs.push_back({"revelation.csv", std::move(table)});
    return res;
}

} // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog = {
        {"sphere-norms",
         "QNM norm of a sphere's l=1 TM mode by several methods over an "
         "integration-radius sweep"},
        {"slab-complete",
         "pole-expansion error of the driven slab field against the "
         "transfer-matrix solution"},
        {"fdfd-spectrum",
         "discretized slab spectrum with PML-stability classification and "
         "per-mode excitation"},
        {"fdfd-reconstruct",
         "modal reconstruction error against a direct solve, full basis vs "
         "QNMs only"},
        {"invariance",
         "PML norm of the sphere mode across integration radii and map "
         "slopes"},
        {"revelation",
         "which slab QNMs a finite PML reveals as the stretch angle grows"},
    };
    return catalog;
}

ExperimentResult run_experiment(const Config& cfg, int threads) {
    if (threads < 1) threads = 1;
    const std::string name = cfg.get_string("experiment", "name");
    if (name == "sphere-norms") return sphere_norms(cfg, threads);
    if (name == "slab-complete") return slab_complete(cfg, threads);
    if (name == "fdfd-spectrum") return fdfd_spectrum(cfg, threads);
    if (name == "fdfd-reconstruct") return fdfd_reconstruct(cfg, threads);
    if (name == "invariance") return invariance(cfg, threads);
    if (name == "revelation") return revelation_exp(cfg, threads);
    throw ConfigError("[experiment] name: unknown experiment '" + name + "'");
}

} // namespace qnmlab
