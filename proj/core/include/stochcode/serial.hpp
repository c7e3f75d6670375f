#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stochcode/bitword.hpp"

namespace stochcode {

// Little-endian binary writer/reader for pinned code objects.
class ByteWriter {
public:
    void magic(std::string_view tag);
    void u64(std::uint64_t v);
    void f64(double v);
    void bits(const BitWord& w);
    const std::vector<std::uint8_t>& data() const { return out_; }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class ByteReader {
public:
    explicit ByteReader(const std::vector<std::uint8_t>& data) : data_(data) {}

    void expect_magic(std::string_view tag);
    std::uint64_t u64();
    double f64();
    BitWord bits();
    bool done() const { return pos_ == data_.size(); }

private:
    const std::vector<std::uint8_t>& data_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

} // namespace stochcode
