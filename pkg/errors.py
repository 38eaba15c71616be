from typing import Dict

ERROR_CODE_MAP: Dict[str, Dict[str, str]] = {
    "ZERO_NORM": {
        "message": "向量或矩阵的范数为零",
        "hint": "零向量无法归一化，请检查输入振幅或密度矩阵的迹。",
    },
    "DIMENSION_MISMATCH": {
        "message": "维度不匹配",
        "hint": "确认算符与态作用在同一个寄存器上（相同的 N 与 d）。",
    },
    "NOT_POWER_OF_D": {
        "message": "长度不是 d 的整数次幂",
        "hint": "检查局部维度 --d 是否与输入匹配。",
    },
    "NOT_SQUARE": {
        "message": "矩阵不是方阵",
        "hint": "算符与密度矩阵必须是方阵。",
    },
    "NOT_HERMITIAN": {
        "message": "算符不是厄米的",
        "hint": "基态、热态与可分最大值搜索只接受厄米算符，可调整 QUDIT_HERMITIAN_TOL。",
    },
    "INVALID_PERMUTATION": {
        "message": "置换无效",
        "hint": "置换必须恰好包含 1..N 各一次，按从 N 到 1 的槽位顺序书写。",
    },
    "INVALID_QUDIT_LIST": {
        "message": "量子位列表无效",
        "hint": "索引必须在 1..N 范围内且不能重复。",
    },
    "INVALID_PARAMETER": {
        "message": "参数超出允许范围",
        "hint": "查看命令帮助中的参数取值范围。",
    },
    "SIZE_CAP_EXCEEDED": {
        "message": "矩阵规模超过上限",
        "hint": "改用 --sparse，或调大 QUDIT_DENSE_MAX_DIM / QUDIT_SPARSE_MAX_DIM。",
    },
    "UNSUPPORTED_REGISTER": {
        "message": "该操作不支持此寄存器",
        "hint": "部分命令只支持量子比特（d=2）或特定的 N。",
    },
    "INVALID_GRAPH": {
        "message": "图的邻接矩阵无效",
        "hint": "邻接矩阵必须对称、对角线为零、元素只取 0 或 1。",
    },
    "PAULI_SYNTAX_ERROR": {
        "message": "Pauli 表达式语法错误",
        "hint": "示例：5*xye+xyz；数字后必须跟 '*'，字母只能是 x、y、z、e。",
    },
    "PAULI_LENGTH_MISMATCH": {
        "message": "Pauli 单词长度不一致",
        "hint": "表达式中每一项的字母数必须相同（每个量子比特一个字母）。",
    },
    "MALFORMED_DOCUMENT": {
        "message": "态/算符文件格式错误",
        "hint": "文件需包含 kind、d、n、data 字段，且 data 长度与 d^N 匹配。",
    },
    "UNKNOWN_STATE": {
        "message": "未知的态名称",
        "hint": "运行 state make --help 查看支持的名称。",
    },
    "UNEXPECTED_ERROR": {
        "message": "未知错误",
        "hint": "使用 --verbose 查看日志详情。",
    },
}


class QuditError(RuntimeError):
    def __init__(self, code: str, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.message = message


class DimensionError(QuditError):
    pass


class NormalizationError(QuditError):
    def __init__(self, message: str) -> None:
        super().__init__("ZERO_NORM", message)


class PermutationError(QuditError):
    pass


class ParameterError(QuditError):
    def __init__(self, message: str) -> None:
        super().__init__("INVALID_PARAMETER", message)


class SizeCapError(QuditError):
    def __init__(self, message: str) -> None:
        super().__init__("SIZE_CAP_EXCEEDED", message)


class HermiticityError(QuditError):
    def __init__(self, message: str) -> None:
        super().__init__("NOT_HERMITIAN", message)


class DocumentError(QuditError):
    def __init__(self, message: str) -> None:
        super().__init__("MALFORMED_DOCUMENT", message)


class PauliSyntaxError(QuditError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__("PAULI_SYNTAX_ERROR", f"{message} at position {position}")
        self.position = position


def explain_error(code: str | None) -> Dict[str, str] | None:
    if not code:
        return None
    return ERROR_CODE_MAP.get(code)
