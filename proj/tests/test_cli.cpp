// Exercises the installed CLI surface end to end: exit codes, output
// formats, determinism. Invoked as: cli_tests <path-to-beatty-lab>.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << cmd << "\n";
        std::exit(2);
    }
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAIL: " << what << "\n";
        ++g_failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <beatty-lab path>\n";
        return 2;
    }
    std::string bin = argv[1];

    // happy path: thm3 JSON report (d = 7 needs N >= 7^6)
    {
        RunResult r = run(bin +
                          " thm3 --alpha \"(0+1*sqrt(3))/1\" --beta 1.3 --d 7 --f 3 --n 1000000");
        expect(r.exit_code == 0, "thm3 happy path exit 0, got " + std::to_string(r.exit_code));
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded(), "thm3 output is JSON");
        if (!j.is_discarded()) {
            expect(j["tool"]["name"] == "beatty-lab", "tool name embedded");
            expect(j["config"]["d"] == 7, "config echoed");
            expect(j["report"].contains("lhs"), "report has lhs");
            expect(j["report"].contains("predicted_bound"), "report has predicted_bound");
        }
    }

    // invalid residue: exit 1 with a message naming the constraint
    {
        RunResult r = run(bin + " thm3 --alpha \"(0+1*sqrt(3))/1\" --beta 1.3 --d 7 --f 14 --n 1000");
        expect(r.exit_code == 1, "f >= d rejected with exit 1, got " + std::to_string(r.exit_code));
    }

    // rational alpha: exit 1 citing irrationality
    {
        RunResult r = run(bin + " thm3 --alpha \"3/2\" --beta 0 --d 7 --f 3 --n 1000");
        expect(r.exit_code == 1, "rational alpha rejected with exit 1");
    }

    // precision error: exit 2
    {
        RunResult r = run(bin + " expsum --theta \"1.41+-0.0001\" --n 100000 --L 5");
        expect(r.exit_code == 2, "wide interval theta exits 2, got " + std::to_string(r.exit_code));
    }

    // beatty enumerate: newline-separated integers
    {
        RunResult r = run(bin + " beatty enumerate --alpha \"(0+1*sqrt(2))/1\" --beta 0 --n 12");
        expect(r.exit_code == 0, "enumerate exit 0");
        expect(r.out == "1\n2\n4\n5\n7\n8\n9\n11\n12\n", "enumerate output, got: " + r.out);
    }

    // cf subcommand JSON schema
    {
        RunResult r = run(bin + " cf --x \"(0+1*sqrt(2))/1\" --count 5");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["quotients"].size() == 5, "cf quotients");
        expect(j["report"]["convergents"][2][0] == "7", "cf convergent 7/5");
    }

    // determinism: byte-identical reruns under --deterministic
    {
        std::string cmd = bin +
                          " expsum --theta \"(0+1*sqrt(2))/1\" --n 2000 --L 3 --d 3 --f 2"
                          " --deterministic --threads 2";
        RunResult a = run(cmd), b = run(cmd);
        expect(a.exit_code == 0 && a.out == b.out, "deterministic reruns byte-identical");
    }

    // theta / psi / constants / least-prime / thm1 / thm2 / remark1 smoke
    {
        RunResult r = run(bin + " theta --n 10");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && std::abs(j["report"]["value"].get<double>() - 5.34710753071747) < 1e-9,
               "theta(10) = log 210");
    }
    {
        RunResult r = run(bin + " constants --n 100");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["all_ok"] == true, "constants at N=100");
    }
    {
        RunResult r = run(bin + " least-prime --g \"0,0,1\" --alpha \"(0+1*sqrt(2))/1\" --cap 100");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["p"] == "2", "least prime 2");
    }
    {
        RunResult r = run(bin + " thm2 --g \"0,0,1\" --alpha \"(0+1*sqrt(2))/1\" --l 1");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && std::abs(j["report"]["bound"].get<double>() - 21.166) < 0.01,
               "thm2 bound ~21.17");
    }
    {
        RunResult r = run(bin + " remark1 --alpha \"(0+1*sqrt(2))/1\" --d 5 --f 2 --l 1");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["p_m"] == "239", "remark1 p_m = 239");
    }

    // config file: key = value with comments
    {
        std::string cfg_path = "cli_test_config.ini";
        std::ofstream cfg(cfg_path);
        cfg << "# comment line\n";
        cfg << "[cf]\n";
        cfg << "x = \"(0+1*sqrt(2))/1\"\n";
        cfg << "count = 3\n";
        cfg.close();
        RunResult r = run(bin + " cf --config " + cfg_path);
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["quotients"].size() == 3, "config file drives cf");
        std::remove(cfg_path.c_str());
    }

    // unknown option rejected
    {
        RunResult r = run(bin + " thm3 --alpha \"(0+1*sqrt(3))/1\" --nope 3 --n 10");
        expect(r.exit_code == 1, "unknown flag exits 1");
    }

    // --out writes the same bytes as stdout; unwritable path is an input error
    {
        std::string out_path = "cli_test_out.json";
        RunResult direct = run(bin + " cf --x \"(0+1*sqrt(2))/1\" --count 4 --deterministic");
        RunResult filed = run(bin + " cf --x \"(0+1*sqrt(2))/1\" --count 4 --deterministic --out " +
                              out_path);
        std::ifstream f(out_path);
        std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        expect(filed.exit_code == 0 && content == direct.out, "--out matches stdout bytes");
        std::remove(out_path.c_str());
        RunResult bad = run(bin + " cf --x \"(0+1*sqrt(2))/1\" --out /nonexistent-dir/x.json");
        expect(bad.exit_code == 1, "unwritable --out exits 1");
    }

    // type subcommand
    {
        RunResult r = run(bin + " type --x \"(0+1*sqrt(2))/1\" --n-max 20");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && std::abs(j["report"]["t_lower"].get<double>() - 1.0) <= 0.05,
               "type t_lower near 1 for sqrt 2");
    }

    // beatty member agrees with its witness field
    {
        RunResult r = run(bin + " beatty member --alpha \"(0+1*sqrt(2))/1\" --m 4");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["report"]["member"] == true &&
                   j["report"]["witness"] == true,
               "member 4 in B(sqrt2)");
        RunResult r3 = run(bin + " beatty member --alpha \"(0+1*sqrt(2))/1\" --m 3");
        auto j3 = nlohmann::json::parse(r3.out, nullptr, false);
        expect(!j3.is_discarded() && j3["report"]["member"] == false, "3 not in B(sqrt2)");
    }

    // expsum-grid CSV
    {
        std::string grid_path = "cli_test_grid.cfg";
        std::ofstream grid(grid_path);
        grid << "N = 500, 1000\nL = 2\nd = 1, 3\nf = 1\ntheta = (0+1*sqrt(2))/1\n";
        grid.close();
        RunResult r = run(bin + " expsum-grid --grid " + grid_path + " --deterministic");
        expect(r.exit_code == 0, "grid exit 0");
        expect(r.out.rfind("N,L,d,f,q,direct,bound,ratio,seconds\n", 0) == 0,
               "grid CSV header");
        int rows = 0;
        for (char c : r.out)
            if (c == '\n') ++rows;
        expect(rows == 1 + 4, "grid row count, got " + std::to_string(rows));
        std::remove(grid_path.c_str());
    }

    if (g_failures) {
        std::cerr << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
