#include "qreg/experiment/output.hpp"

#include "qreg/error.hpp"
#include "qreg/version.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qreg::experiment {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) {
            out << ',';
        }
        out << csv_field(fields[k]);
    }
    out << "\r\n";
}

std::vector<std::size_t> columns_with_prefix(const ResultTable& table, const std::string& prefix) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (table.columns[k].rfind(prefix, 0) == 0) {
            idx.push_back(k);
        }
    }
    return idx;
}

std::string gp_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string strip_prefix(const std::string& name, const std::string& prefix) {
    return name.substr(prefix.size());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    f << content;
    if (!f) {
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const ResultTable& table, std::ostream& out) {
    write_row(out, table.columns);
    std::vector<std::string> fields;
    for (const auto& row : table.rows) {
        fields.clear();
        for (double v : row) {
            fields.push_back(format_number(v));
        }
        write_row(out, fields);
    }
}

void write_code_basis_csv(const CodeSubspace& code, std::ostream& out) {
    std::vector<std::string> header{"index"};
    for (Eigen::Index c = 0; c < code.basis.cols(); ++c) {
        header.push_back("re_" + std::to_string(c));
        header.push_back("im_" + std::to_string(c));
    }
    write_row(out, header);
    for (Eigen::Index r = 0; r < code.basis.rows(); ++r) {
        std::vector<std::string> fields{std::to_string(r)};
        for (Eigen::Index c = 0; c < code.basis.cols(); ++c) {
            fields.push_back(format_number(code.basis(r, c).real()));
            fields.push_back(format_number(code.basis(r, c).imag()));
        }
        write_row(out, fields);
    }
}

Json sidecar(const ResultTable& table, double wall_seconds) {
    Json j = table.provenance;
    j["library_version"] = kVersion;
    j["wall_time_seconds"] = wall_seconds;
    j["columns"] = table.columns;
    j["rows"] = table.rows.size();
    return j;
}

std::string gnuplot_script(const ResultTable& table, const ExperimentConfig& cfg, const std::string& csv_name) {
    std::ostringstream gp;
    gp << "# gnuplot script for " << cfg.name << "\n";
    gp << "set datafile separator \",\"\n";
    gp << "set key top right\n";
    gp << "set terminal pngcairo size 800,600\n";
    gp << "set output " << gp_quote(cfg.name + ".png") << "\n";

    std::string prefix;
    std::string ylabel;
    bool invert = false;
    if (cfg.kind == "tau_sweep") {
        prefix = "rate_";
        ylabel = "tau_1";
        invert = true;
        gp << "set xlabel " << gp_quote(table.columns.empty() ? "x" : table.columns.front()) << "\n";
        if (cfg.name == "fig1") {
            gp << "set xrange [0:1]\nset yrange [1.5:4]\n";
        }
    } else if (cfg.kind == "simulate") {
        gp << "set xlabel \"t\"\n";
        if (cfg.name == "fig3") {
            prefix = "delta_";
            ylabel = "linear entropy";
        } else if (cfg.name == "fig4") {
            prefix = "dF";
            ylabel = "fidelity difference";
        } else if (cfg.name == "fig5") {
            prefix = "ddelta";
            ylabel = "linear entropy difference";
        } else {
            prefix = "F_";
            ylabel = "fidelity";
        }
    } else {
        gp << "# no plot layout for kind " << cfg.kind << "\n";
        return gp.str();
    }
    gp << "set ylabel " << gp_quote(ylabel) << "\n";

    const std::vector<std::size_t> cols = columns_with_prefix(table, prefix);
    gp << "plot ";
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k] + 1;  // gnuplot columns are 1-based
        const std::string title = strip_prefix(table.columns[cols[k]], prefix);
        if (k) {
            gp << ", \\\n     ";
        }
        gp << gp_quote(csv_name) << " every ::1 using 1:";
        if (invert) {
            // τ₁ = 1/rate, clipped where the rate vanishes.
            gp << "(($" << c << ") > " << format_number(kDivergentRate) << " ? 1/($" << c << ") : 1/0)";
        } else {
            gp << c;
        }
        gp << " with lines title " << gp_quote(title.empty() ? table.columns[cols[k]] : title);
    }
    gp << "\n";
    return gp.str();
}

std::vector<std::filesystem::path> emit_outputs(const ResultTable& table, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir, double wall_seconds) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    const std::string csv_name = cfg.name + ".csv";
    for (const auto& fmt : cfg.output.formats) {
        if (fmt == "csv") {
            std::ostringstream os;
            write_csv(table, os);
            written.push_back(dir / csv_name);
            write_file(written.back(), os.str());
        } else if (fmt == "json") {
            written.push_back(dir / (cfg.name + ".json"));
            write_file(written.back(), sidecar(table, wall_seconds).dump(2) + "\n");
        } else if (fmt == "gnuplot") {
            written.push_back(dir / (cfg.name + ".gp"));
            write_file(written.back(), gnuplot_script(table, cfg, csv_name));
        }
    }
    return written;
}

}  // namespace qreg::experiment
