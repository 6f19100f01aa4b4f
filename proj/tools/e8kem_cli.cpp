// Command-line surface: key generation, encapsulation, decapsulation, KAT
// generation and verification, a loopback TCP exchange demo, and the two
// numerical reports (failure bound, attack costs).
//
// Exit codes: 0 success, 2 usage error, 3 I/O or connection error,
// 4 verification mismatch.

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "e8kem/analysis.hpp"
#include "e8kem/codec.hpp"
#include "e8kem/estimator.hpp"
#include "e8kem/kem.hpp"
#include "e8kem/shake.hpp"

using namespace e8kem;

namespace {

constexpr int EXIT_USAGE = 2;
constexpr int EXIT_IO = 3;
constexpr int EXIT_MISMATCH = 4;

struct CliError {
    int code;
    std::string message;
};

// ---- entropy --------------------------------------------------------------

class EntropySource {
public:
    static EntropySource create(bool allow_deterministic) {
        EntropySource src;
        const char* seed_hex = std::getenv("E8KEM_SEED");
        if (seed_hex && *seed_hex) {
            if (!allow_deterministic)
                throw CliError{EXIT_USAGE,
                               "E8KEM_SEED is set; refusing without --insecure-deterministic"};
            src.deterministic_ = true;
            auto seed = from_hex(seed_hex);
            src.xof_.absorb(seed);
        }
        return src;
    }

    void fill(std::span<uint8_t> out) {
        if (deterministic_) {
            xof_.squeeze(out);
            return;
        }
        std::random_device rd;
        for (auto& byte : out)
            byte = uint8_t(rd());
    }

private:
    bool deterministic_ = false;
    Shake128 xof_;
};

// ---- binary file container ------------------------------------------------

// 8-byte header: "E8K1" magic, type byte, log2(q), k, p; then the payload.
enum class FileType : uint8_t { public_key = 1, secret_key = 2, ciphertext = 3, key = 4 };

void write_blob(const std::string& path, FileType type, const Params& params,
                std::span<const uint8_t> payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CliError{EXIT_IO, "cannot open for writing: " + path};
    const uint8_t header[8] = {'E', '8', 'K', '1', uint8_t(type), uint8_t(params.log2q),
                               uint8_t(params.k), uint8_t(params.p)};
    out.write(reinterpret_cast<const char*>(header), 8);
    out.write(reinterpret_cast<const char*>(payload.data()), std::streamsize(payload.size()));
    if (!out)
        throw CliError{EXIT_IO, "short write: " + path};
}

std::vector<uint8_t> read_blob(const std::string& path, FileType type, const Params& params) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError{EXIT_IO, "cannot open: " + path};
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (bytes.size() < 8 ||
        std::string_view(reinterpret_cast<char*>(bytes.data()), 4) != FILE_MAGIC)
        throw CliError{EXIT_IO, path + ": not an e8kem file"};
    if (bytes[4] != uint8_t(type))
        throw CliError{EXIT_IO, path + ": wrong file type"};
    if (bytes[5] != params.log2q || bytes[6] != params.k || bytes[7] != params.p)
        throw CliError{EXIT_IO, path + ": parameter set does not match --preset " + params.name()};
    return {bytes.begin() + 8, bytes.end()};
}

// ---- sockets ---------------------------------------------------------------

struct HostPort {
    std::string host;
    uint16_t port = 0;
};

HostPort parse_hostport(const std::string& text) {
    const size_t colon = text.rfind(':');
    if (colon == std::string::npos)
        throw CliError{EXIT_USAGE, "expected host:port, got " + text};
    HostPort hp;
    hp.host = text.substr(0, colon);
    const int port = std::atoi(text.c_str() + colon + 1);
    if (port < 0 || port > 65535)
        throw CliError{EXIT_USAGE, "bad port in " + text};
    hp.port = uint16_t(port);
    return hp;
}

class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    Socket& operator=(Socket&& other) noexcept {
        if (this != &other) {
            close();
            fd_ = other.fd_;
            other.fd_ = -1;
        }
        return *this;
    }
    ~Socket() { close(); }

    int fd() const { return fd_; }

    void close() {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = -1;
    }

    void send_all(std::span<const uint8_t> data) {
        size_t done = 0;
        while (done < data.size()) {
            const ssize_t n = ::send(fd_, data.data() + done, data.size() - done, 0);
            if (n <= 0)
                throw CliError{EXIT_IO, "send failed"};
            done += size_t(n);
        }
    }

    void recv_all(std::span<uint8_t> data) {
        size_t done = 0;
        while (done < data.size()) {
            const ssize_t n = ::recv(fd_, data.data() + done, data.size() - done, 0);
            if (n <= 0)
                throw CliError{EXIT_IO, "connection closed mid-message"};
            done += size_t(n);
        }
    }

private:
    int fd_ = -1;
};

// Frames are a 4-byte big-endian length followed by the payload.
void send_frame(Socket& sock, std::span<const uint8_t> payload) {
    const uint32_t len = uint32_t(payload.size());
    const uint8_t header[4] = {uint8_t(len >> 24), uint8_t(len >> 16), uint8_t(len >> 8),
                               uint8_t(len)};
    sock.send_all(header);
    sock.send_all(payload);
}

std::vector<uint8_t> recv_frame(Socket& sock, size_t max_len = 1 << 20) {
    uint8_t header[4];
    sock.recv_all(header);
    const uint32_t len = uint32_t(header[0]) << 24 | uint32_t(header[1]) << 16 |
                         uint32_t(header[2]) << 8 | header[3];
    if (len > max_len)
        throw CliError{EXIT_IO, "oversized frame"};
    std::vector<uint8_t> payload(len);
    sock.recv_all(payload);
    return payload;
}

void append_transcript(const std::string& path, const char* tag,
                       std::span<const uint8_t> payload) {
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::app);
    out << tag << "=" << to_hex(payload) << "\n";
}

// ---- subcommand bodies -----------------------------------------------------

KatRecord run_one_exchange(const Params& params, std::span<const uint8_t> entropy96) {
    std::span<const uint8_t, 64> gen_entropy(entropy96.data(), 64);
    std::span<const uint8_t, 32> enc_entropy(entropy96.data() + 64, 32);
    ServerState state = gen(gen_entropy, params);
    ClientOutput out = encaps(state.public_key(), enc_entropy, params);
    SharedKey server_key = decaps(state, out.u, out.hint, params);
    if (!(server_key == out.key))
        throw CliError{EXIT_MISMATCH, "internal exchange mismatch"};

    KatRecord record;
    record.seed.assign(entropy96.begin(), entropy96.end());
    record.pk = encode_msg1(state.public_key(), params);
    record.sk = pack_polyvec(state.s, params);
    record.msg2 = encode_msg2(out.u, out.hint, params);
    record.key.assign(out.key.bytes.begin(), out.key.bytes.end());
    return record;
}

int cmd_keygen(const Params& params, const std::string& out_base, bool insecure) {
    EntropySource entropy = EntropySource::create(insecure);
    std::array<uint8_t, 64> seed;
    entropy.fill(seed);
    ServerState state = gen(seed, params);
    write_blob(out_base + ".pk", FileType::public_key, params,
               encode_msg1(state.public_key(), params));
    write_blob(out_base + ".sk", FileType::secret_key, params, pack_polyvec(state.s, params));
    std::cout << "wrote " << out_base << ".pk (" << params.msg1_bytes() << " bytes) and "
              << out_base << ".sk\n";
    return 0;
}

int cmd_encaps(const Params& params, const std::string& pk_path, const std::string& out_base,
               bool insecure) {
    EntropySource entropy = EntropySource::create(insecure);
    PublicKey pk = decode_msg1(read_blob(pk_path, FileType::public_key, params), params);
    std::array<uint8_t, 32> seed;
    entropy.fill(seed);
    ClientOutput out = encaps(pk, seed, params);
    write_blob(out_base + ".ct", FileType::ciphertext, params,
               encode_msg2(out.u, out.hint, params));
    write_blob(out_base + ".key", FileType::key, params, out.key.bytes);
    std::cout << to_hex(out.key.bytes) << "\n";
    return 0;
}

int cmd_decaps(const Params& params, const std::string& sk_path, const std::string& ct_path,
               const std::string& key_out) {
    PolyVec s = unpack_polyvec(read_blob(sk_path, FileType::secret_key, params), params);
    Msg2 msg2 = decode_msg2(read_blob(ct_path, FileType::ciphertext, params), params);
    ServerState state;
    state.s = s;
    SharedKey key = decaps(state, msg2.u, msg2.hint, params);
    if (!key_out.empty())
        write_blob(key_out, FileType::key, params, key.bytes);
    std::cout << to_hex(key.bytes) << "\n";
    return 0;
}

int cmd_kat_gen(const Params& params, const std::string& out_path, int count, bool insecure) {
    EntropySource entropy = EntropySource::create(insecure);
    std::vector<KatRecord> records;
    for (int i = 0; i < count; i++) {
        std::array<uint8_t, 96> seed;
        entropy.fill(seed);
        records.push_back(run_one_exchange(params, seed));
    }
    kat_write_file(out_path, records);
    std::cout << "wrote " << count << " records to " << out_path << "\n";
    return 0;
}

int cmd_kat_verify(const Params& params, const std::string& in_path) {
    std::vector<KatRecord> records;
    try {
        records = kat_read_file(in_path);
    } catch (const std::exception& e) {
        throw CliError{EXIT_IO, e.what()};
    }
    int index = 0;
    for (const KatRecord& record : records) {
        if (record.seed.size() != 96)
            throw CliError{EXIT_MISMATCH, "record " + std::to_string(index) + ": bad seed length"};
        KatRecord replay = run_one_exchange(params, record.seed);
        if (replay.pk != record.pk || replay.sk != record.sk || replay.msg2 != record.msg2 ||
            replay.key != record.key)
            throw CliError{EXIT_MISMATCH, "record " + std::to_string(index) + ": replay mismatch"};
        index++;
    }
    std::cout << "verified " << index << " records\n";
    return 0;
}

int cmd_exchange_server(const Params& params, const std::string& listen,
                        const std::string& port_file, const std::string& transcript,
                        bool insecure) {
    EntropySource entropy = EntropySource::create(insecure);
    const HostPort hp = parse_hostport(listen);

    Socket listener(::socket(AF_INET, SOCK_STREAM, 0));
    if (listener.fd() < 0)
        throw CliError{EXIT_IO, "socket() failed"};
    const int one = 1;
    ::setsockopt(listener.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(hp.port);
    if (::inet_pton(AF_INET, hp.host.c_str(), &addr.sin_addr) != 1)
        throw CliError{EXIT_USAGE, "bad listen address: " + hp.host};
    if (::bind(listener.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0)
        throw CliError{EXIT_IO, "bind failed on " + listen};
    if (::listen(listener.fd(), 1) != 0)
        throw CliError{EXIT_IO, "listen failed"};

    if (!port_file.empty()) {
        socklen_t len = sizeof addr;
        ::getsockname(listener.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
        std::ofstream out(port_file);
        out << ntohs(addr.sin_port) << "\n";
    }

    Socket conn(::accept(listener.fd(), nullptr, nullptr));
    if (conn.fd() < 0)
        throw CliError{EXIT_IO, "accept failed"};

    std::array<uint8_t, 64> seed;
    entropy.fill(seed);
    ServerState state = gen(seed, params);
    auto msg1 = encode_msg1(state.public_key(), params);
    send_frame(conn, msg1);
    append_transcript(transcript, "msg1", msg1);

    auto msg2_bytes = recv_frame(conn);
    append_transcript(transcript, "msg2", msg2_bytes);
    Msg2 msg2 = decode_msg2(msg2_bytes, params);
    SharedKey key = decaps(state, msg2.u, msg2.hint, params);
    std::cout << to_hex(key.bytes) << "\n";
    return 0;
}

int cmd_exchange_client(const Params& params, const std::string& connect,
                        const std::string& transcript, bool insecure) {
    EntropySource entropy = EntropySource::create(insecure);
    const HostPort hp = parse_hostport(connect);

    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(hp.host.c_str(), std::to_string(hp.port).c_str(), &hints, &res) != 0)
        throw CliError{EXIT_IO, "cannot resolve " + hp.host};
    Socket sock(::socket(res->ai_family, res->ai_socktype, res->ai_protocol));
    const bool ok = sock.fd() >= 0 && ::connect(sock.fd(), res->ai_addr, res->ai_addrlen) == 0;
    ::freeaddrinfo(res);
    if (!ok)
        throw CliError{EXIT_IO, "cannot connect to " + connect};

    auto msg1_bytes = recv_frame(sock);
    append_transcript(transcript, "msg1", msg1_bytes);
    PublicKey pk = decode_msg1(msg1_bytes, params);

    std::array<uint8_t, 32> seed;
    entropy.fill(seed);
    ClientOutput out = encaps(pk, seed, params);
    auto msg2 = encode_msg2(out.u, out.hint, params);
    send_frame(sock, msg2);
    append_transcript(transcript, "msg2", msg2);
    std::cout << to_hex(out.key.bytes) << "\n";
    return 0;
}

int cmd_analyze_pe(const std::string& preset_arg, const std::string& mode_arg, int blocks) {
    const AnalysisMode mode = mode_arg == "exact" ? AnalysisMode::exact : AnalysisMode::floating;
    if (mode == AnalysisMode::exact && blocks > 48)
        std::cerr << "note: exact mode convolves bignums; --blocks " << blocks
                  << " can take very long (24 runs in seconds)\n";

    if (preset_arg == "all") {
        const struct { uint32_t q; int k; } families[] = {{2048, 2}, {4096, 4}, {8192, 4}};
        std::printf("%-18s", "bound (log2)");
        for (int p = 2; p <= 5; p++)
            std::printf("  p=%-8d", p);
        std::printf("\n");
        for (auto [q, k] : families) {
            std::printf("q=%-5u k=%-10d", q, k);
            for (int p = 2; p <= 5; p++)
                std::printf("  %-10.1f", pe_bound_log2(make_params(q, k, p), mode, blocks));
            std::printf("\n");
        }
        for (auto [q, k] : families)
            for (int p = 2; p <= 5; p++)
                std::printf("q=%u k=%d p=%d log2pe=%.4f\n", q, k, p,
                            pe_bound_log2(make_params(q, k, p), mode, blocks));
        return 0;
    }

    const Params& params = preset(preset_arg);
    const double pe = pe_bound_log2(params, mode, blocks);
    std::printf("q=%u k=%d p=%d log2pe=%.4f\n", params.q, params.k, params.p, pe);
    return 0;
}

void print_attack_row(const char* label, const AttackCost& cost) {
    std::printf("%-8s %5d %5d %10d %10d %10d\n", label, cost.m, cost.b, cost.classical,
                cost.quantum, cost.plausible);
}

int cmd_estimate_security(const std::string& preset_arg) {
    std::vector<EstimatorRow> rows;
    rows.push_back(row_for(preset(preset_arg)));
    for (auto& row : comparison_rows())
        rows.push_back(row);

    for (const EstimatorRow& row : rows) {
        std::printf("%s (n=%d, sigma^2=%d/2)\n", row.label.c_str(), row.n_total, row.k);
        std::printf("%-8s %5s %5s %10s %10s %10s\n", "attack", "m", "b", "classical", "quantum",
                    "plausible");
        print_attack_row("primal", primal_cost(row.q, row.k, row.n_total));
        print_attack_row("dual", dual_cost(row.q, row.k, row.n_total));
        std::printf("\n");
    }
    return 0;
}

int cmd_params() {
    std::printf("%-16s %6s %3s %3s %6s %6s %6s %6s %6s %9s %9s\n", "preset", "q", "k", "p", "s1",
                "s2", "C", "keyb", "hintb", "msg1", "msg2");
    for (const auto& name : preset_names()) {
        const Params& p = preset(name);
        std::printf("%-16s %6u %3d %3d %6u %6u %6u %6d %6zu %9zu %9zu\n", name.c_str(), p.q, p.k,
                    p.p, p.s1, p.s2, p.c, N * p.key_rate(), p.hint_bytes() * 8, p.msg1_bytes(),
                    p.msg2_bytes());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"e8kem: module-LWE key encapsulation with E8 reconciliation"};
    app.require_subcommand(1);

    std::string preset_name{DEFAULT_PRESET};
    std::string pe_preset = "all";
    std::string out_path, in_path, ct_path, key_out;
    std::string listen_addr, connect_addr, port_file, transcript;
    std::string mode = "float";
    int count = 4;
    int blocks = BLOCK_TERM_COUNT;
    bool insecure = false;

    app.add_flag("--insecure-deterministic", insecure,
                 "allow E8KEM_SEED to drive all randomness (testing only)");

    auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
    keygen_cmd->add_option("--preset", preset_name, "parameter set");
    keygen_cmd->add_option("--out", out_path, "output base path (.pk/.sk appended)")->required();

    auto* encaps_cmd = app.add_subcommand("encaps", "encapsulate against a public key");
    encaps_cmd->add_option("--preset", preset_name, "parameter set");
    encaps_cmd->add_option("--in", in_path, "public key file")->required();
    encaps_cmd->add_option("--out", out_path, "output base path (.ct/.key appended)")->required();

    auto* decaps_cmd = app.add_subcommand("decaps", "decapsulate a ciphertext");
    decaps_cmd->add_option("--preset", preset_name, "parameter set");
    decaps_cmd->add_option("--in", in_path, "secret key file")->required();
    decaps_cmd->add_option("--ct", ct_path, "ciphertext file")->required();
    decaps_cmd->add_option("--out", key_out, "optional key output file");

    auto* katgen_cmd = app.add_subcommand("kat-gen", "generate known-answer records");
    katgen_cmd->add_option("--preset", preset_name, "parameter set");
    katgen_cmd->add_option("--out", out_path, "KAT file")->required();
    katgen_cmd->add_option("--count", count, "number of records");

    auto* katverify_cmd = app.add_subcommand("kat-verify", "replay known-answer records");
    katverify_cmd->add_option("--preset", preset_name, "parameter set");
    katverify_cmd->add_option("--in", in_path, "KAT file")->required();

    auto* server_cmd = app.add_subcommand("exchange-server", "serve one key exchange over TCP");
    server_cmd->add_option("--preset", preset_name, "parameter set");
    server_cmd->add_option("--listen", listen_addr, "host:port to bind")->required();
    server_cmd->add_option("--port-file", port_file, "write the bound port here");
    server_cmd->add_option("--transcript", transcript, "append raw frames here");

    auto* client_cmd = app.add_subcommand("exchange-client", "run one key exchange over TCP");
    client_cmd->add_option("--preset", preset_name, "parameter set");
    client_cmd->add_option("--connect", connect_addr, "host:port to reach")->required();
    client_cmd->add_option("--transcript", transcript, "append raw frames here");

    auto* pe_cmd = app.add_subcommand("analyze-pe", "failure-probability bound table");
    pe_cmd->add_option("--preset", pe_preset, "parameter set or 'all'");
    pe_cmd->add_option("--mode", mode, "float or exact")->check(CLI::IsMember({"float", "exact"}));
    pe_cmd->add_option("--blocks", blocks, "number of i.i.d. block terms (192 = full protocol)");

    auto* sec_cmd = app.add_subcommand("estimate-security", "BKZ core-SVP cost report");
    sec_cmd->add_option("--preset", preset_name, "parameter set");

    auto* params_cmd = app.add_subcommand("params", "list parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (app.got_subcommand(params_cmd))
            return cmd_params();
        if (app.got_subcommand(pe_cmd)) {
            if (pe_preset != "all")
                preset(pe_preset); // validate the name early
            return cmd_analyze_pe(pe_preset, mode, blocks);
        }
        if (app.got_subcommand(sec_cmd))
            return cmd_estimate_security(preset_name);

        const Params& params = preset(preset_name);
        if (app.got_subcommand(keygen_cmd))
            return cmd_keygen(params, out_path, insecure);
        if (app.got_subcommand(encaps_cmd))
            return cmd_encaps(params, in_path, out_path, insecure);
        if (app.got_subcommand(decaps_cmd))
            return cmd_decaps(params, in_path, ct_path, key_out);
        if (app.got_subcommand(katgen_cmd))
            return cmd_kat_gen(params, out_path, count, insecure);
        if (app.got_subcommand(katverify_cmd))
            return cmd_kat_verify(params, in_path);
        if (app.got_subcommand(server_cmd))
            return cmd_exchange_server(params, listen_addr, port_file, transcript, insecure);
        if (app.got_subcommand(client_cmd))
            return cmd_exchange_client(params, connect_addr, transcript, insecure);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return EXIT_USAGE;
}
