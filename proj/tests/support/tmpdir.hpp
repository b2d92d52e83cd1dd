#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace calf::testing {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "calf-test-XXXXXX").string();
        path = mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name, const std::string& content) const {
        std::string full = (path / name).string();
        std::ofstream out(full, std::ios::binary);
        out << content;
        return full;
    }
};

}  // namespace calf::testing
