#pragma once

// Byte compressors for the normalized-compression-distance pipeline.
//
// BuiltinCompressor is a self-contained LZ77 variant with a 32 KiB window:
// tokens are grouped eight to a flag byte, literals cost one byte, matches
// three (length 3..255, distance 1..32768). The stream starts with a one
// byte tag and the varint-coded original size, so even empty input costs
// two bytes. A decoder is included so tests can prove the size being
// measured belongs to a lossless code. ExternalCompressor shells out to a
// user command reading stdin and writing stdout and measures only the
// number of output bytes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "infodist/errors.hpp"

namespace infodist {

using Bytes = std::vector<std::uint8_t>;

inline Bytes concat(const Bytes& a, const Bytes& b) {
    Bytes out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Bytes bytes_of(const std::string& text) {
    return Bytes(text.begin(), text.end());
}

class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::size_t compressed_size(const Bytes& data) = 0;
    virtual std::string name() const = 0;
};

class BuiltinCompressor : public Compressor {
public:
    static constexpr std::size_t kWindow = 32768;
    static constexpr std::size_t kMinMatch = 3;
    static constexpr std::size_t kMaxMatch = 255;
    static constexpr int kChainDepth = 128;
    static constexpr std::uint8_t kTag = 0x4C;

    std::size_t compressed_size(const Bytes& data) override {
        return compress(data).size();
    }

    std::string name() const override { return "builtin-lz"; }

    static Bytes compress(const Bytes& data) {
        Bytes out;
        out.push_back(kTag);
        write_varint(out, data.size());

        const std::size_t n = data.size();
        std::vector<std::int32_t> head(std::size_t(1) << 15, -1);
        std::vector<std::int32_t> prev(n, -1);

        // Pending token group: up to eight tokens behind one flag byte.
        std::uint8_t flags = 0;
        int group_count = 0;
        std::size_t flag_pos = 0;
        auto open_group = [&] {
            if (group_count == 0) {
                flag_pos = out.size();
                out.push_back(0);
            }
        };
        auto close_token = [&](bool literal) {
            if (literal) flags |= std::uint8_t(0x80u >> group_count);
            if (++group_count == 8) {
                out[flag_pos] = flags;
                flags = 0;
                group_count = 0;
            }
        };

        std::size_t pos = 0;
        while (pos < n) {
            std::size_t best_len = 0;
            std::size_t best_dist = 0;
            if (pos + kMinMatch <= n) {
                std::int32_t cand = head[hash3(data, pos)];
                int depth = 0;
                while (cand >= 0 && depth < kChainDepth) {
                    std::size_t dist = pos - std::size_t(cand);
                    if (dist > kWindow) break;
                    std::size_t len = match_length(data, std::size_t(cand), pos);
                    // Strictly longer wins, so among equals the nearest
                    // (visited first) is kept.
                    if (len >= kMinMatch && len > best_len) {
                        best_len = len;
                        best_dist = dist;
                        if (len == kMaxMatch) break;
                    }
                    cand = prev[std::size_t(cand)];
                    ++depth;
                }
            }

            open_group();
            if (best_len >= kMinMatch) {
                out.push_back(std::uint8_t(best_len - kMinMatch));
                out.push_back(std::uint8_t((best_dist - 1) >> 8));
                out.push_back(std::uint8_t((best_dist - 1) & 0xFF));
                close_token(false);
                for (std::size_t i = 0; i < best_len; ++i)
                    insert_pos(data, pos + i, head, prev);
                pos += best_len;
            } else {
                out.push_back(data[pos]);
                close_token(true);
                insert_pos(data, pos, head, prev);
                ++pos;
            }
        }
        if (group_count > 0) out[flag_pos] = flags;
        return out;
    }

    static Bytes decompress(const Bytes& packed) {
        std::size_t pos = 0;
        auto need = [&](std::size_t k) {
            if (pos + k > packed.size())
                throw std::runtime_error("decompress: truncated stream");
        };
        need(1);
        if (packed[pos++] != kTag)
            throw std::runtime_error("decompress: bad tag byte");
        std::size_t total = read_varint(packed, pos);

        Bytes out;
        out.reserve(total);
        while (out.size() < total) {
            need(1);
            std::uint8_t flags = packed[pos++];
            for (int i = 0; i < 8 && out.size() < total; ++i) {
                if (flags & (0x80u >> i)) {
                    need(1);
                    out.push_back(packed[pos++]);
                } else {
                    need(3);
                    std::size_t len = std::size_t(packed[pos]) + kMinMatch;
                    std::size_t dist =
                        (std::size_t(packed[pos + 1]) << 8 | packed[pos + 2]) +
                        1;
                    pos += 3;
                    if (dist > out.size())
                        throw std::runtime_error("decompress: bad distance");
                    for (std::size_t j = 0; j < len; ++j)
                        out.push_back(out[out.size() - dist]);
                }
            }
        }
        return out;
    }

private:
    static std::uint32_t hash3(const Bytes& d, std::size_t i) {
        std::uint32_t h = std::uint32_t(d[i]) << 16 |
                          std::uint32_t(d[i + 1]) << 8 | d[i + 2];
        return (h * 2654435761u) >> 17;
    }

    static void insert_pos(const Bytes& d, std::size_t i,
                           std::vector<std::int32_t>& head,
                           std::vector<std::int32_t>& prev) {
        if (i + kMinMatch > d.size()) return;
        auto h = hash3(d, i);
        prev[i] = head[h];
        head[h] = std::int32_t(i);
    }

    static std::size_t match_length(const Bytes& d, std::size_t from,
                                    std::size_t at) {
        std::size_t len = 0;
        while (at + len < d.size() && len < kMaxMatch &&
               d[from + len] == d[at + len])
            ++len;
        return len;
    }

    static void write_varint(Bytes& out, std::size_t value) {
        while (value >= 0x80) {
            out.push_back(std::uint8_t(value) | 0x80);
            value >>= 7;
        }
        out.push_back(std::uint8_t(value));
    }

    static std::size_t read_varint(const Bytes& in, std::size_t& pos) {
        std::size_t value = 0;
        int shift = 0;
        for (;;) {
            if (pos >= in.size())
                throw std::runtime_error("decompress: truncated size");
            std::uint8_t byte = in[pos++];
            value |= std::size_t(byte & 0x7F) << shift;
            if (!(byte & 0x80)) return value;
            shift += 7;
            if (shift > 56) throw std::runtime_error("decompress: size overflow");
        }
    }
};

// Runs `/bin/sh -c command` feeding the data on stdin; the measured size is
// the byte count of stdout. The command must exit zero.
class ExternalCompressor : public Compressor {
public:
    explicit ExternalCompressor(std::string command)
        : command_(std::move(command)) {}

    std::string name() const override { return "external: " + command_; }

    std::size_t compressed_size(const Bytes& data) override {
        int in_pipe[2], out_pipe[2];
        if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
            throw std::runtime_error("external compressor: pipe failed");

        pid_t pid = fork();
        if (pid < 0) throw std::runtime_error("external compressor: fork failed");
        if (pid == 0) {
            dup2(in_pipe[0], 0);
            dup2(out_pipe[1], 1);
            close(in_pipe[0]);
            close(in_pipe[1]);
            close(out_pipe[0]);
            close(out_pipe[1]);
            execl("/bin/sh", "sh", "-c", command_.c_str(),
                  static_cast<char*>(nullptr));
            _exit(127);
        }
        close(in_pipe[0]);
        close(out_pipe[1]);

        // Feed stdin from a helper thread so a large output cannot deadlock
        // against an unread input pipe. SIGPIPE is blocked inside the thread:
        // a command that stops reading early (or exits at once) must surface
        // as a short write, not kill the process.
        std::thread feeder([&] {
            sigset_t pipe_set;
            sigemptyset(&pipe_set);
            sigaddset(&pipe_set, SIGPIPE);
            pthread_sigmask(SIG_BLOCK, &pipe_set, nullptr);
            std::size_t off = 0;
            while (off < data.size()) {
                ssize_t wrote =
                    write(in_pipe[1], data.data() + off, data.size() - off);
                if (wrote <= 0) break;
                off += std::size_t(wrote);
            }
            close(in_pipe[1]);
            struct timespec instant = {0, 0};
            sigtimedwait(&pipe_set, nullptr, &instant);  // drain if pending
        });

        std::size_t total = 0;
        char buf[4096];
        for (;;) {
            ssize_t got = read(out_pipe[0], buf, sizeof buf);
            if (got <= 0) break;
            total += std::size_t(got);
        }
        close(out_pipe[0]);
        feeder.join();

        int status = 0;
        waitpid(pid, &status, 0);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
            throw std::runtime_error("external compressor failed: " + command_);
        return total;
    }

private:
    std::string command_;
};

}  // namespace infodist
