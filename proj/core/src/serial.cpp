#include "stochcode/serial.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "stochcode/errors.hpp"

namespace stochcode {

void ByteWriter::magic(std::string_view tag) { out_.insert(out_.end(), tag.begin(), tag.end()); }

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::bits(const BitWord& w) {
    const auto b = w.serialize();
    out_.insert(out_.end(), b.begin(), b.end());
}

void ByteReader::expect_magic(std::string_view tag) {
    if (data_.size() - pos_ < tag.size() || std::memcmp(data_.data() + pos_, tag.data(), tag.size()) != 0)
        throw FormatError("bad magic, expected " + std::string(tag));
    pos_ += tag.size();
}

std::uint64_t ByteReader::u64() {
    if (data_.size() - pos_ < 8) throw FormatError("truncated integer");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{data_[pos_ + static_cast<std::size_t>(i)]} << (8 * i);
    pos_ += 8;
    return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

BitWord ByteReader::bits() {
    std::size_t used = 0;
    BitWord w = BitWord::deserialize(data_.data() + pos_, data_.size() - pos_, &used);
    pos_ += used;
    return w;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

} // namespace stochcode
