// Writes the bundled comparison corpus in UCR tsv layout.
#include <fstream>
#include <iostream>

#include "abba/report.hpp"
#include "abba/synthetic.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_mini_corpus <output.tsv>\n";
        return 1;
    }
    std::ofstream out(argv[1], std::ios::binary);
    for (const auto& s : abba::synthetic::mini_corpus()) {
        out << s.label;
        for (double v : s.values) {
            out << '\t' << abba::format_number(v);
        }
        out << '\n';
    }
    return out ? 0 : 2;
}
