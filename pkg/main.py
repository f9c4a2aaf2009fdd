"""
時序圖神經網路邏輯編譯與驗證工作台 - 主程式
=============================================================================
子命令: check / compile / run / classify / verify / demo / fixture
退出碼: 0 成功、1 驗證失敗、2 輸入錯誤、3 公式不屬於所需片段
=============================================================================
"""
import json
import sys

from cli import build_parser, run_command
from config.settings import EXIT_OK, EXIT_INPUT_ERROR, get_config_summary
from utils.logger_config import setup_logging, get_logger


def main(argv=None) -> int:
    """主程式入口點"""
    parser = build_parser()
    args = parser.parse_args(argv)

    # =============================================================================
    # 初始化日誌
    # =============================================================================
    setup_logging(args.log_level, log_to_file=not args.no_log_file)
    logger = get_logger(__name__)

    if args.config:
        print(json.dumps(get_config_summary(), indent=2, ensure_ascii=False))
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT_ERROR

    logger.debug(f"執行子命令 {args.command} (seed={args.seed})")
    try:
        return run_command(args)
    except KeyboardInterrupt:
        logger.info("收到中斷信號，已停止")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.error(f"未預期的錯誤: {str(e)}")
        import traceback
        logger.error(traceback.format_exc())
        raise


if __name__ == "__main__":
    sys.exit(main())
