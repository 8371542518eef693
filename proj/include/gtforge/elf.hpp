#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "gtforge/common.hpp"
#include "gtforge/sha256.hpp"

namespace gtforge {

struct section_view {
    std::string name;
    std::uint64_t file_offset = 0;
    std::uint64_t virtual_address = 0;
    std::uint64_t size = 0;
    bool executable = false;
    bool has_bits = true;  // false for SHT_NOBITS
};

struct func_symbol {
    std::string name;
    std::uint64_t abs_offset = 0;
    std::optional<std::uint64_t> size;  // nullopt when the toolchain omitted it
    std::string section_name;
};

struct binary_image {
    std::filesystem::path path;
    std::string content_hash;  // sha256 of the file bytes, lowercase hex
    isa_t isa = isa_t::x64;
    std::vector<section_view> sections;
    std::vector<func_symbol> symbols;  // function-typed, ascending abs_offset
    std::vector<std::string> notes;    // surfaced oddities (symbols outside sections, ...)
    byte_vec file_bytes;
};

namespace elf_detail {

inline std::uint64_t rd(byte_span b, size_t off, size_t n) {
    std::uint64_t v = 0;
    for (size_t i = 0; i < n; ++i) v |= std::uint64_t(b[off + i]) << (8 * i);
    return v;
}

constexpr std::uint16_t em_386 = 3;
constexpr std::uint16_t em_x86_64 = 62;
constexpr std::uint32_t sht_symtab = 2;
constexpr std::uint32_t sht_nobits = 8;
constexpr std::uint64_t shf_alloc = 0x2;
constexpr std::uint64_t shf_execinstr = 0x4;
constexpr unsigned stt_func = 2;
constexpr std::uint16_t shn_lo_reserve = 0xff00;

struct raw_section {
    std::uint32_t name_off = 0, type = 0, link = 0;
    std::uint64_t flags = 0, addr = 0, offset = 0, size = 0, entsize = 0;
};

}  // namespace elf_detail

inline binary_image load_binary(const std::filesystem::path& path) {
    using namespace elf_detail;

    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::unreadable_file, "cannot open " + path.string());
    byte_vec data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) raise(errc::unreadable_file, "read failure on " + path.string());

    if (data.size() < 52 || data[0] != 0x7f || data[1] != 'E' || data[2] != 'L' || data[3] != 'F')
        raise(errc::unsupported_container, path.string() + " is not an ELF file");
    if (data[5] != 1) raise(errc::unsupported_container, "big-endian ELF is not supported");

    bool is64 = data[4] == 2;
    if (data[4] != 1 && data[4] != 2)
        raise(errc::unsupported_container, "unknown ELF class");

    byte_span b(data);
    std::uint16_t e_type = static_cast<std::uint16_t>(rd(b, 16, 2));
    std::uint16_t machine = static_cast<std::uint16_t>(rd(b, 18, 2));
    isa_t isa;
    if (machine == em_x86_64 && is64)
        isa = isa_t::x64;
    else if (machine == em_386 && !is64)
        isa = isa_t::x86;
    else
        raise(errc::unsupported_isa, "ELF machine " + std::to_string(machine) + " is not x86/x64");

    std::uint64_t shoff = is64 ? rd(b, 0x28, 8) : rd(b, 0x20, 4);
    std::uint16_t shentsize = static_cast<std::uint16_t>(rd(b, is64 ? 0x3a : 0x2e, 2));
    std::uint16_t shnum = static_cast<std::uint16_t>(rd(b, is64 ? 0x3c : 0x30, 2));
    std::uint16_t shstrndx = static_cast<std::uint16_t>(rd(b, is64 ? 0x3e : 0x32, 2));
    if (shoff == 0 || shnum == 0)
        raise(errc::unsupported_container, "ELF has no section headers");
    if (shoff + std::uint64_t(shnum) * shentsize > data.size())
        raise(errc::unsupported_container, "section header table exceeds file size");

    auto read_sh = [&](unsigned idx) {
        size_t o = shoff + std::size_t(idx) * shentsize;
        raw_section s;
        if (is64) {
            s.name_off = static_cast<std::uint32_t>(rd(b, o + 0, 4));
            s.type = static_cast<std::uint32_t>(rd(b, o + 4, 4));
            s.flags = rd(b, o + 8, 8);
            s.addr = rd(b, o + 16, 8);
            s.offset = rd(b, o + 24, 8);
            s.size = rd(b, o + 32, 8);
            s.link = static_cast<std::uint32_t>(rd(b, o + 40, 4));
            s.entsize = rd(b, o + 56, 8);
        } else {
            s.name_off = static_cast<std::uint32_t>(rd(b, o + 0, 4));
            s.type = static_cast<std::uint32_t>(rd(b, o + 4, 4));
            s.flags = rd(b, o + 8, 4);
            s.addr = rd(b, o + 12, 4);
            s.offset = rd(b, o + 16, 4);
            s.size = rd(b, o + 20, 4);
            s.link = static_cast<std::uint32_t>(rd(b, o + 24, 4));
            s.entsize = rd(b, o + 36, 4);
        }
        return s;
    };

    std::vector<raw_section> raw(shnum);
    for (unsigned i = 0; i < shnum; ++i) raw[i] = read_sh(i);

    auto str_at = [&](const raw_section& strtab, std::uint64_t off) -> std::string {
        if (off >= strtab.size) return {};
        size_t start = strtab.offset + off;
        size_t end = start;
        while (end < data.size() && end < strtab.offset + strtab.size && data[end] != 0) ++end;
        return std::string(reinterpret_cast<const char*>(data.data() + start), end - start);
    };

    if (shstrndx >= shnum)
        raise(errc::unsupported_container, "bad section name string table index");
    const raw_section& shstr = raw[shstrndx];

    binary_image img;
    img.path = path;
    img.isa = isa;
    img.content_hash = sha256::hex(data);

    // For relocatable objects sections have no virtual addresses; use file
    // offsets so symbol/byte lookups stay consistent within the image.
    bool is_rel = e_type == 1;
    std::vector<std::string> sec_names(shnum);
    std::vector<std::uint64_t> sec_vaddr(shnum, 0);
    for (unsigned i = 0; i < shnum; ++i) {
        sec_names[i] = str_at(shstr, raw[i].name_off);
        sec_vaddr[i] = (is_rel && raw[i].addr == 0) ? raw[i].offset : raw[i].addr;
        if (!(raw[i].flags & shf_alloc)) continue;
        bool nobits = raw[i].type == sht_nobits;
        if (!nobits && raw[i].offset + raw[i].size > data.size())
            raise(errc::unsupported_container,
                  "section " + sec_names[i] + " extends past end of file");
        section_view v;
        v.name = sec_names[i];
        v.file_offset = raw[i].offset;
        v.virtual_address = sec_vaddr[i];
        v.size = raw[i].size;
        v.executable = (raw[i].flags & shf_execinstr) != 0;
        v.has_bits = !nobits;
        img.sections.push_back(std::move(v));
    }

    for (unsigned si = 0; si < shnum; ++si) {
        if (raw[si].type != sht_symtab) continue;
        const raw_section& symtab = raw[si];
        if (symtab.link >= shnum) continue;
        const raw_section& strtab = raw[symtab.link];
        size_t entsize = symtab.entsize ? symtab.entsize : (is64 ? 24 : 16);
        size_t count = entsize ? symtab.size / entsize : 0;
        for (size_t i = 0; i < count; ++i) {
            size_t o = symtab.offset + i * entsize;
            if (o + entsize > data.size()) break;
            std::uint32_t name_off;
            std::uint64_t value, size;
            unsigned info;
            std::uint16_t shndx;
            if (is64) {
                name_off = static_cast<std::uint32_t>(rd(b, o + 0, 4));
                info = static_cast<unsigned>(rd(b, o + 4, 1));
                shndx = static_cast<std::uint16_t>(rd(b, o + 6, 2));
                value = rd(b, o + 8, 8);
                size = rd(b, o + 16, 8);
            } else {
                name_off = static_cast<std::uint32_t>(rd(b, o + 0, 4));
                value = rd(b, o + 4, 4);
                size = rd(b, o + 8, 4);
                info = static_cast<unsigned>(rd(b, o + 12, 1));
                shndx = static_cast<std::uint16_t>(rd(b, o + 14, 2));
            }
            if ((info & 0xf) != stt_func) continue;
            if (shndx == 0 || shndx >= shn_lo_reserve || shndx >= shnum) continue;
            std::string name = str_at(strtab, name_off);
            if (name.empty()) continue;

            func_symbol fs;
            fs.name = std::move(name);
            fs.abs_offset = is_rel ? sec_vaddr[shndx] + value : value;
            if (size > 0) fs.size = size;
            fs.section_name = sec_names[shndx];

            bool in_exec = false;
            for (const auto& s : img.sections)
                if (s.executable && fs.abs_offset >= s.virtual_address &&
                    fs.abs_offset < s.virtual_address + s.size)
                    in_exec = true;
            if (!in_exec)
                img.notes.push_back("function symbol '" + fs.name +
                                    "' lies outside executable sections");
            img.symbols.push_back(std::move(fs));
        }
    }

    std::stable_sort(img.symbols.begin(), img.symbols.end(),
                     [](const func_symbol& a, const func_symbol& c) {
                         return a.abs_offset < c.abs_offset;
                     });
    img.file_bytes = std::move(data);
    return img;
}

inline byte_vec read_bytes(const binary_image& img, std::uint64_t abs_offset, std::uint64_t len) {
    if (len == 0) return {};
    for (const auto& s : img.sections) {
        if (!s.has_bits) continue;
        if (abs_offset >= s.virtual_address && abs_offset + len <= s.virtual_address + s.size) {
            std::uint64_t fo = s.file_offset + (abs_offset - s.virtual_address);
            return byte_vec(img.file_bytes.begin() + static_cast<std::ptrdiff_t>(fo),
                            img.file_bytes.begin() + static_cast<std::ptrdiff_t>(fo + len));
        }
    }
    raise(errc::out_of_range, "range [" + to_hex(abs_offset) + ", " + to_hex(abs_offset + len) +
                                  ") does not fall inside one section");
}

inline const std::vector<func_symbol>& list_functions(const binary_image& img) {
    return img.symbols;
}

}  // namespace gtforge
