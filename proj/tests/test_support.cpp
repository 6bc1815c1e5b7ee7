#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef KNOT_TEST_DATA_DIR
#error "KNOT_TEST_DATA_DIR must be defined"
#endif

namespace test_support {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<CorpusKnot>& corpus() {
    static const std::vector<CorpusKnot> all = [] {
        std::vector<CorpusKnot> out;
        std::ifstream in(std::string(KNOT_TEST_DATA_DIR) + "/corpus.txt");
        if (!in) throw std::runtime_error("corpus.txt not found");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::stringstream ss(line);
            std::string f[4];
            for (auto& x : f) std::getline(ss, x, '|');
            out.push_back({trim(f[0]), std::stoi(trim(f[1])), trim(f[2]), trim(f[3])});
        }
        return out;
    }();
    return all;
}

const CorpusKnot& corpus_knot(const std::string& name) {
    for (const auto& k : corpus())
        if (k.name == name) return k;
    throw std::runtime_error("unknown corpus knot " + name);
}

}  // namespace test_support
