#pragma once

#include "solvcohom/report.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace solvcohom {

/// The fifteen lattice cases of the three families, in family order:
/// g1 three, g2 (α = 0 two regimes, α > 0 three), g8 seven.
struct PresetCase {
    std::string id;  // e.g. "g8_v"
    SplittingData data;
};

inline std::vector<PresetCase> all_preset_cases() {
    std::vector<PresetCase> out;
    for (const char* t : {"i", "ii", "iii"}) out.push_back({std::string("g1_") + t, preset_g1(t)});
    for (const char* x : {"pi/2", "pi/3"}) {
        SplittingData d = preset_g2_alpha0(x);
        out.push_back({"g2a0_" + d.case_id, d});
    }
    for (const char* t : {"qodd", "qeven", "generic"})
        out.push_back({std::string("g2_") + t, preset_g2_alpha_pos(t)});
    for (const char* t : {"i", "ii", "iii", "iv", "v", "vi", "vii"})
        out.push_back({std::string("g8_") + t, preset_g8(t)});
    return out;
}

/// Generator listings of B and C in paper notation.
inline json generators_to_json(const SplittingData& data) {
    auto cells = [&](const BuiltComplex& b) {
        json arr = json::array();
        for (const auto& [c, labels] : b.cx.cells)
            arr.push_back({{"p", c.p}, {"q", c.q}, {"basis", labels}});
        return arr;
    };
    json out;
    out["B"] = cells(build_B(data));
    out["C"] = cells(build_C(data));
    return out;
}

inline std::string generators_to_text(const SplittingData& data) {
    std::ostringstream os;
    auto emit = [&](const char* name, const BuiltComplex& b) {
        os << name << ":\n";
        for (const auto& [c, labels] : b.cx.cells) {
            os << "  (" << c.p << "," << c.q << "): {";
            for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? ", " : "") << labels[i];
            os << "}\n";
        }
    };
    emit("B", build_B(data));
    emit("C", build_C(data));
    return os.str();
}

/// Writes the full table/decomposition corpus for every preset case: one
/// file per (case, artifact). Returns the files written.
inline std::vector<std::string> regenerate_golden(const std::string& out_dir, int budget = -1) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto write = [&](const std::string& name, const std::string& payload) {
        fs::path path = fs::path(out_dir) / name;
        std::ofstream os(path);
        if (!os) throw MathError("cannot write " + path.string());
        os << payload;
        written.push_back(path.string());
    };
    for (const auto& pc : all_preset_cases()) {
        BuiltComplex C = build_C(pc.data);
        write(pc.id + "_dims.json", dims_to_json(DimsTable::of(C.cx)).dump(2) + "\n");
        write(pc.id + "_dims.tex", dims_to_latex(DimsTable::of(C.cx)));
        write(pc.id + "_generators.json", generators_to_json(pc.data).dump(2) + "\n");
        Decomposition dec = decompose(C.cx);
        write(pc.id + "_decomposition.json", decomposition_to_json(dec).dump(2) + "\n");
        write(pc.id + "_decomposition.txt",
              describe(dec) + "\n" + render_ascii(dec, C.cx.bounding_box()));
        write(pc.id + "_formality.json", formality_to_json(formality_report(pc.data, budget)).dump(2) + "\n");
    }
    return written;
}

}  // namespace solvcohom
