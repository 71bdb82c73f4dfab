#!/usr/bin/env python3
"""Writes the bundled mini-corpus and its authored LLM completions.

Outputs (next to this script):
  apps/<id>/{question.txt,solutions.json,metadata.json}
  codecontest.jsonl
  completions.jsonl   {original_code, completion} pairs; turn them into
                      replay fixtures with `semiforge fixtures --pairs`.
"""
import json
import os
import shutil

HERE = os.path.dirname(os.path.abspath(__file__))


def completion(instruction, code, answer, inputs, function_name=None,
               drop=None, fence_inputs=False):
    parts = []
    if drop != "instruction":
        parts.append("### Instruction\n" + instruction + "\n")
    if drop != "refined":
        parts.append("### Refined Code\n```python\n" + code.rstrip("\n") + "\n```\n")
    at = "### Answer Type\n" + answer + "\n"
    if function_name:
        at += "Function Name: " + function_name + "\n"
    parts.append(at)
    body = "### Test Case Inputs\n"
    for item in inputs:
        if fence_inputs:
            body += "#### Input\n```\n" + item + "\n```\n"
        else:
            body += "#### Input\n" + item + "\n"
    parts.append(body)
    return "".join(parts)


def stdin_c(instruction, code, inputs, **kw):
    return completion(instruction, code, "Standard Input", inputs, **kw)


def call_c(instruction, code, name, inputs, **kw):
    return completion(instruction, code, "Call-Based", inputs, function_name=name, **kw)


# Each problem: id, description, solutions [(code, completion or None)],
# optional special_judge.
APPS = []
CODECONTEST = []


def apps(pid, description, solutions, special_judge=False):
    APPS.append(dict(id=pid, description=description, solutions=solutions,
                     special_judge=special_judge))


INTS = ["3", "7", "0", "-4", "12", "100", "x", "5"]

apps("p01", "Given an integer n, print 2n.", [
    ("n=int(input())\nprint(n*2)\n",
     stdin_c("Read an integer and print its double.",
             "number = int(input())\nprint(number * 2)\n", INTS)),
    ("print(int(input())<<1)\n",
     stdin_c("Given an integer n on standard input, output n multiplied by two.",
             "value = int(input())\nprint(value << 1)\n", INTS)),
])

apps("p02", "Read n and then n integers. Print their sum.", [
    ("n=int(input())\na=list(map(int,input().split()))\nprint(sum(a[:n]))\n",
     stdin_c("Read a count n followed by a line of n integers and print the total of those integers.",
             "n = int(input())\nvalues = list(map(int, input().split()))\nprint(sum(values[:n]))\n",
             ["3\n1 2 3", "1\n5", "4\n-1 -2 -3 -4", "2\n10 20", "0\n", "5\n1 1 1 1 1",
              "2\n7 8", "3\n100 200 300"], fence_inputs=True)),
])

apps("p03", "Reverse the given string.", [
    ("s=input()\nprint(s[::-1])\n",
     stdin_c("Read one line of text and print it reversed.",
             "text = input()\nprint(text[::-1])\n",
             ["abc", "hello", "racecar", "a", "ab cd", "12345", "xyz", "OpenAI"])),
])

apps("p04", "Return n! for a non-negative integer n.", [
    ("def factorial(n):\n  r=1\n  for i in range(2,n+1): r*=i\n  return r\n",
     call_c("Write a function factorial(n) that returns the factorial of a non-negative integer n.",
            "def factorial(n):\n    result = 1\n    for i in range(2, n + 1):\n        result *= i\n    return result\n",
            "factorial", ["(5,)", "(0,)", "(1,)", "(10,)", "(3,)", "(7,)", "(12,)", "(2,)"])),
])

apps("p05", "Return the n-th Fibonacci number with fib(0)=0 and fib(1)=1.", [
    ("def fib(n):\n  a,b=0,1\n  for _ in range(n): a,b=b,a+b\n  return a\n",
     call_c("Implement fib(n) returning the n-th Fibonacci number, where fib(0) is 0 and fib(1) is 1.",
            "def fib(n):\n    a, b = 0, 1\n    for _ in range(n + 1):\n        a, b = b, a + b\n    return a\n",
            "fib", ["(0,)", "(1,)", "(2,)", "(10,)", "(20,)", "(5,)", "(7,)", "(15,)"])),
])

apps("p06", "Decide whether n is prime.", [
    ("def is_prime(n):\n  if n<2: return False\n  i=2\n  while i*i<=n:\n    if n%i==0: return False\n    i+=1\n  return True\n",
     call_c("Write is_prime(n) that returns True when n is a prime number and False otherwise.",
            "def is_prime(n):\n    if n < 2:\n        return False\n    divisor = 2\n    while divisor * divisor <= n:\n        if n % divisor == 0:\n            return False\n        divisor += 1\n    return True\n",
            "is_prime", ["(2,)", "(1,)", "(17,)", "(18,)", "(97,)", "(0,)", "(49,)", "(7919,)"])),
])

apps("p07", "Print the maximum of a list of integers given on one line.", [
    ("print(max(map(int,input().split())))\n",
     stdin_c("Read a line of space-separated integers and print the largest one.",
             "values = list(map(int, input().split()))\nprint(values[len(values)])\n",
             ["1 2 3", "5", "-1 -7 -3", "10 9 8", "4 4 4", "0 100", "3 1 2", "8 6"])),
])

apps("p08", "Count the vowels in a word.", [
    ("s=input()\nprint(sum(c in 'aeiouAEIOU' for c in s))\n",
     stdin_c("Count how many vowels (a, e, i, o, u in either case) appear in the input line and print the count.",
             "line = input()\nprint(sum(ch in 'aeiouAEIOU' for ch in line))\n",
             ["hello", "sky", "AEIOU", "programming", "", "Queue", "rhythm", "banana"])),
])

apps("p09", "Compute the greatest common divisor of two integers.", [
    ("import math\na,b=map(int,input().split())\nprint(math.gcd(a,b))\n",
     stdin_c("Read two integers a and b separated by a space and print their greatest common divisor.",
             "import math\n\nfirst, second = map(int, input().split())\nprint(math.gcd(first, second))\n",
             ["12 18", "7 13", "0 5", "100 75", "a b", "9", "48 180", "17 17"])),
])

apps("p10", "Print any permutation of 1..n whose adjacent elements differ by more than 1.", [
    ("n=int(input())\nprint(*(list(range(2,n+1,2))+list(range(1,n+1,2))))\n", None),
    ("n=int(input())\nprint(*range(2,n+1,2),*range(1,n+1,2))\n", None),
], special_judge=True)

apps("p11", "Check whether a string is a palindrome.", [
    ("def is_palindrome(s):\n  return s==s[::-1]\n",
     call_c("Write is_palindrome(s) that returns True if the string s reads the same forwards and backwards.",
            "def is_palindrome(s):\n    return s == s[::-1]\n",
            "is_palindrome", ["('racecar',)", "('abc',)", "('',)", "('a',)", "('abba',)", "('abca',)", "('noon',)", "('xy',)"])),
])

apps("p12", "Print the sum of the digits of n.", [
    ("print(sum(map(int,input().strip())))\n",
     stdin_c("Read a non-negative integer and print the sum of its decimal digits.",
             "", ["123", "0", "999"], drop="refined")),
])

apps("p13", "Print FizzBuzz for 1..n.", [
    ("n=int(input())\nfor i in range(1,n+1):\n  print('FizzBuzz' if i%15==0 else 'Fizz' if i%3==0 else 'Buzz' if i%5==0 else i)\n",
     stdin_c("Given n, print the numbers from 1 to n, replacing multiples of 3 with Fizz, multiples of 5 with Buzz and multiples of both with FizzBuzz.",
             "n = int(input())\nfor i in range(1, n + 1):\n    if i % 15 == 0:\n        print('FizzBuzz')\n    elif i % 3 == 0:\n        print('Fizz')\n    elif i % 5 == 0:\n        print('Buzz')\n    else:\n        print(i)\n",
             ["15", "1", "5", "3", "30", "0", "-", "7"])),
])

LONG = "n=int(input())\n" + "".join("# padding comment number %d here\n" % i for i in range(220)) + "print(n*n)\n"
apps("p14", "Print the square of n.", [
    (LONG, None),
    ("n=int(input())\nprint(n*n)\n",
     stdin_c("Read an integer n and print n squared.",
             "n = int(input())\nprint(n * n)\n", ["2", "-3", "0", "11", "1000", "q", "7", "5"])),
])

# 30 solutions; only the first 25 survive the cap.
NAMES = [("a", "b"), ("x", "y"), ("p", "q"), ("m", "n"), ("u", "v"), ("i", "j"),
         ("s", "t"), ("c", "d"), ("e", "f"), ("g", "h"), ("k", "l"), ("r", "w"),
         ("aa", "bb"), ("xx", "yy"), ("first", "second"), ("left", "right"),
         ("lo", "hi"), ("one", "two"), ("val1", "val2"), ("n1", "n2"),
         ("alpha", "beta"), ("foo", "bar"), ("z1", "z2"), ("k1", "k2"),
         ("ab", "cd"), ("ef", "gh"), ("ij", "kl"), ("mn", "op"), ("qr", "st"), ("uv", "wx")]
PHRASES = [
    "Read two integers a and b from one line and print their sum.",
    "Read two integers a and b from one line and print the sum.",
    "Given two whole numbers on a single line, output the result of adding them together.",
    "Add the two integers provided on standard input and display the total.",
    "Read two integers a and b from one line and print their sum a+b.",
]
SUM_INPUTS = ["1 2", "10 20", "-5 5", "0 0", "100 -1", "3 4", "7", "8 9"]
p15 = []
for idx, (x, y) in enumerate(NAMES):
    code = "%s,%s=map(int,input().split())\nprint(%s+%s)\n" % (x, y, x, y)
    refined = "first, second = map(int, input().split())\nprint(first + second)\n"
    if idx == 3:
        refined = "first, second = map(int, input().split())\nprint(first - second)\n"
    p15.append((code, stdin_c(PHRASES[idx % len(PHRASES)], refined,
                              SUM_INPUTS[: 3 + idx % 6] + ["oops"])))
apps("p15", "Compute the sum of two integers a and b.", p15)

apps("p16", "Transpose a matrix.", [
    ("def transpose(m):\n  return [list(r) for r in zip(*m)]\n",
     completion("Write transpose(m) that returns the transpose of a matrix given as a list of rows.",
                "def transpose(matrix):\n    return [list(row) for row in zip(*matrix)]\n",
                "Interactive", ["([[1, 2], [3, 4]],)"])),
])

apps("p17", "Return the length of the longest word in a sentence.", [
    ("def longest(s):\n  return max(len(w) for w in s.split())\n",
     completion("Write longest(s) returning the length of the longest word in sentence s.",
                "def longest(sentence):\n    return max(len(word) for word in sentence.split())\n",
                "Call-Based", ["('a bb ccc',)", "('hello world',)"])),
])

apps("p18", "Print the number of set bits in n.", [
    ("print(bin(int(input())).count('1'))\n",
     stdin_c("Read an integer n and print how many 1 bits its binary representation has.",
             "n = int(input())\nprint(bin(n).count('1'))\n", [])),
])

apps("p19", "Given the dimensions of a grid, print its area.", [
    ("h,w=map(int,input().split())\nprint(h*w)\n",
     stdin_c("Read a grid description and print the number of cells.",
             "height, width = map(int, input().split())\nprint(height * width)\n",
             ["3x4", "grid 5 by 6", "ten", "", "4,4", "2;3", "1 x 1", "seven eight"])),
])

apps("p20", "Print the integer square root of n.", [
    ("import math\nprint(math.isqrt(int(input())))\n",
     stdin_c("Read a non-negative integer n and print the largest integer whose square does not exceed n.",
             "n = int(input())\nroot = 0\nwhile root * root <= n or True:\n    root += 0\nprint(root)\n",
             ["16", "17", "0", "1", "99", "100", "2", "1000000"])),
])

apps("p21", "Run-length encode a string.", [
    ("s=input()\nr=''\ni=0\nwhile i<len(s):\n  j=i\n  while j<len(s) and s[j]==s[i]: j+=1\n  r+=s[i]+str(j-i)\n  i=j\nprint(r)\n",
     stdin_c("Read a string and print its run-length encoding, writing each character followed by the length of its run.",
             "from itertools import groupby\n\ntext = input()\nprint(''.join(ch + str(len(list(run))) for ch, run in groupby(text)))\n",
             ["aaabbc", "abc", "zzzz", "a", "aabbaa", "", "xyzzy", "mmmmmnnn"])),
])

apps("p22", "Find the index of a target in a sorted list, or -1.", [
    ("def search(a,t):\n  lo,hi=0,len(a)-1\n  while lo<=hi:\n    m=(lo+hi)//2\n    if a[m]==t: return m\n    if a[m]<t: lo=m+1\n    else: hi=m-1\n  return -1\n",
     call_c("Implement search(a, t) that returns the index of t in the sorted list a using binary search, or -1 if t is absent.",
            "def search(items, target):\n    low, high = 0, len(items) - 1\n    while low <= high:\n        mid = (low + high) // 2\n        if items[mid] == target:\n            return mid\n        if items[mid] < target:\n            low = mid + 1\n        else:\n            high = mid - 1\n    return -1\n",
            "search", ["([1, 3, 5, 7], 5)", "([1, 3, 5, 7], 4)", "([], 1)", "([2], 2)",
                       "([1, 2, 3, 4, 5, 6], 6)", "([1, 2, 3], 0)", "(None, 1)", "([10, 20], 10)"])),
])

apps("p23", "Count the words in a line of text.", [
    ("print(len(input().split()))\n",
     stdin_c("Read a line of text and print how many whitespace-separated words it contains.",
             "line = input()\nprint(len(line.split()))\n",
             ["hello world", "one", "", "a b c d e", "  spaced   out  ", "x y", "tab\tseparated", "many words in this line"])),
])

apps("p24", "Sort the given integers in non-decreasing order.", [
    ("a=list(map(int,input().split()))\nprint(*sorted(a))\n",
     stdin_c("Read space-separated integers and print them sorted in ascending order.",
             "numbers = list(map(int, input().split()))\nprint(*sorted(numbers))\n",
             ["3 1 2", "5", "9 8 7 6", "1 1 1", "-1 5 0", "10 -10", "4 2", "100 50 75"])),
])

apps("p25", "Determine whether a year is a leap year.", [
    ("class Solution:\n  def isLeap(self,y):\n    return y%4==0 and (y%100!=0 or y%400==0)\n",
     call_c("Write a method isLeap(y) on class Solution that returns True when y is a Gregorian leap year.",
            "class Solution:\n    def isLeap(self, year):\n        return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)\n",
            "isLeap", ["(2000,)", "(1900,)", "(2024,)", "(2023,)", "(1600,)", "(2100,)", "(4,)", "(1,)"])),
])


def cc(name, description, solutions, special_judge=None):
    row = dict(name=name, description=description, solutions=solutions)
    if special_judge is not None:
        row["special_judge"] = special_judge
    CODECONTEST.append(row)


CC_COMPLETIONS = {}


def sol(code, completion_text=None, language="PYTHON3", correct=True):
    if completion_text is not None:
        CC_COMPLETIONS[code] = completion_text
    return dict(language=language, code=code, correct=correct)


cc("cc1", "Print the minimum of three integers.", [
    sol("a,b,c=map(int,input().split())\nprint(min(a,b,c))\n",
        stdin_c("Read three integers on one line and print the smallest of them.",
                "values = list(map(int, input().split()))\nprint(min(values))\n",
                ["1 2 3", "3 2 1", "-1 0 1", "5 5 5", "10 -20 30", "7 8", "0 0 -1", "9 4 6"])),
    sol("a,b,c=map(int,input().split())\nprint(max(a,b,c))\n", correct=False),
    sol("#include <cstdio>\nint main(){}\n", language="CPP", correct=True),
])

cc("cc2", "Compute a to the power b modulo m.", [
    sol("a,b,m=map(int,input().split())\nprint(pow(a,b,m))\n",
        stdin_c("Read integers a, b and m and print a raised to the power b, modulo m.",
                "base, exponent, modulus = map(int, input().split())\nprint(pow(base, exponent, modulus))\n",
                ["2 10 1000", "3 0 7", "5 3 13", "7 2", "10 18 97", "2 5 0", "1 100 2", "4 4 5"])),
    sol("a,b,m=map(int,input().split())\nr=1\nfor _ in range(b): r=r*a%m\nprint(r)\n",
        stdin_c("Given a base a, an exponent b and a modulus m, output a^b mod m computed by repeated multiplication.",
                "base, exponent, modulus = map(int, input().split())\nresult = 1\nfor _ in range(exponent):\n    result = result * base % modulus\nprint(result)\n",
                ["2 10 1000", "3 0 7", "5 3 13", "10 18 97", "1 100 2", "4 4 5"])),
])

cc("cc3", "  Count the words in a line   of text.\n", [
    sol("import sys\nprint(len(sys.stdin.readline().split()))\n",
        stdin_c("Read a line of text and print how many whitespace separated words it contains.",
                "import sys\n\nline = sys.stdin.readline()\nprint(len(line.split()))\n",
                ["hello world", "one", "a b c d e", "x y"])),
    sol("s=input().split()\nprint(len(s))\n",
        stdin_c("Print the number of words in the given sentence.",
                "words = input().split()\nprint(len(words))\n",
                ["the quick brown fox", "single", "two words"])),
])

cc("cc4", "Decide whether three lengths form a triangle.", [
    sol("a,b,c=sorted(map(int,input().split()))\nprint('YES' if a+b>c else 'NO')\n",
        stdin_c("Read three side lengths and print YES if they can form a non-degenerate triangle, otherwise NO.",
                "a, b, c = sorted(map(int, input().split()))\nprint('YES' if a + b > c else 'NO')\n",
                ["3 4 5", "1 1 3", "2 2 2", "1 2 3", "10 1 1", "5 5 9", "0 0 0", "7 10 5"])),
])

cc("cc5", "Print the n-th triangular number.", [
    sol("n=int(input())\nprint(n*(n+1)//2)\n",
        stdin_c("Read n and print the sum 1 + 2 + ... + n.",
                "n = int(input())\nprint(n * (n + 1) // 2)\n",
                ["1", "4", "10", "0", "100", "2", "z", "50"])),
    sol("n=int(input())\nprint(sum(range(n+1)))\n", language="Python 2", correct=False),
])


def main():
    apps_dir = os.path.join(HERE, "apps")
    shutil.rmtree(apps_dir, ignore_errors=True)
    pairs = []
    for p in APPS:
        d = os.path.join(apps_dir, p["id"])
        os.makedirs(d)
        with open(os.path.join(d, "question.txt"), "w") as f:
            f.write(p["description"] + "\n")
        with open(os.path.join(d, "solutions.json"), "w") as f:
            json.dump([code for code, _ in p["solutions"]], f, indent=1)
        with open(os.path.join(d, "metadata.json"), "w") as f:
            json.dump({"special_judge": p["special_judge"]}, f)
        for code, text in p["solutions"]:
            if text is not None:
                pairs.append({"original_code": code, "completion": text})
    with open(os.path.join(HERE, "codecontest.jsonl"), "w") as f:
        for row in CODECONTEST:
            f.write(json.dumps(row, sort_keys=True) + "\n")
        f.write('{"name": "broken", "description": 42}\n')
        f.write("not json at all\n")
    for code, text in CC_COMPLETIONS.items():
        pairs.append({"original_code": code, "completion": text})
    with open(os.path.join(HERE, "completions.jsonl"), "w") as f:
        for row in pairs:
            f.write(json.dumps(row, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
