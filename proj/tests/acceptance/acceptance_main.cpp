#include <cstdio>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
    std::string filter;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--filter" && i + 1 < argc) filter = argv[++i];
        else if (arg.rfind("--filter=", 0) == 0) filter = arg.substr(9);
        else {
            std::fprintf(stderr, "usage: %s [--filter NAME]\n", argv[0]);
            return 2;
        }
    }
    return lowfroude::acceptance::report(lowfroude::acceptance::run(filter));
}
